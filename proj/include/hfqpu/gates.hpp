#pragma once

// Logical gate set and unitary comparison metrics.

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

#include "hfqpu/errors.hpp"
#include "hfqpu/spin_core.hpp"

namespace hfqpu {

namespace gate {

struct RX { SpinChannel target; double angle; };
struct RY { SpinChannel target; double angle; };
struct RZ { SpinChannel target; double angle; };
struct H { SpinChannel target; };
struct X { SpinChannel target; };
struct Z { SpinChannel target; };
struct CZ {};
struct CNOT {
  SpinChannel control = SpinChannel::Nuclear;
  SpinChannel target = SpinChannel::Electron;
};

}  // namespace gate

using Gate = std::variant<gate::RX, gate::RY, gate::RZ, gate::H, gate::X, gate::Z, gate::CZ, gate::CNOT>;

inline void validate(const Gate& g) {
  if (const auto* c = std::get_if<gate::CNOT>(&g); c && c->control == c->target)
    throw std::invalid_argument("CNOT control and target must differ");
}

inline std::string describe(const Gate& g) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        const auto on = [](SpinChannel c) { return "(" + std::string(to_string(c)) + ")"; };
        if constexpr (std::is_same_v<T, gate::RX>) return "rx[" + std::to_string(v.angle) + "]" + on(v.target);
        else if constexpr (std::is_same_v<T, gate::RY>) return "ry[" + std::to_string(v.angle) + "]" + on(v.target);
        else if constexpr (std::is_same_v<T, gate::RZ>) return "rz[" + std::to_string(v.angle) + "]" + on(v.target);
        else if constexpr (std::is_same_v<T, gate::H>) return "h" + on(v.target);
        else if constexpr (std::is_same_v<T, gate::X>) return "x" + on(v.target);
        else if constexpr (std::is_same_v<T, gate::Z>) return "z" + on(v.target);
        else if constexpr (std::is_same_v<T, gate::CZ>) return "cz";
        else return "cnot" + on(v.control) + on(v.target);
      },
      g);
}

namespace pauli {

inline Matrix2c x() { return (Matrix2c() << 0, 1, 1, 0).finished(); }
inline Matrix2c y() { return (Matrix2c() << 0, -kI, kI, 0).finished(); }
inline Matrix2c z() { return (Matrix2c() << 1, 0, 0, -1).finished(); }
inline Matrix2c hadamard() { return (Matrix2c() << 1, 1, 1, -1).finished() / std::numbers::sqrt2; }

// exp(-i*angle*P/2) for a Pauli P.
inline Matrix2c rotation(const Matrix2c& p, double angle) {
  return std::cos(angle / 2.0) * Matrix2c::Identity() - kI * std::sin(angle / 2.0) * p;
}

}  // namespace pauli

// Textbook unitary, nucleus as the left tensor factor.
inline Operator4 ideal_unitary(const Gate& g) {
  validate(g);
  return std::visit(
      [](const auto& v) -> Operator4 {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::RX>) return embed(v.target, pauli::rotation(pauli::x(), v.angle));
        else if constexpr (std::is_same_v<T, gate::RY>) return embed(v.target, pauli::rotation(pauli::y(), v.angle));
        else if constexpr (std::is_same_v<T, gate::RZ>) return embed(v.target, pauli::rotation(pauli::z(), v.angle));
        else if constexpr (std::is_same_v<T, gate::H>) return embed(v.target, pauli::hadamard());
        else if constexpr (std::is_same_v<T, gate::X>) return embed(v.target, pauli::x());
        else if constexpr (std::is_same_v<T, gate::Z>) return embed(v.target, pauli::z());
        else if constexpr (std::is_same_v<T, gate::CZ>) {
          Operator4 u = Operator4::Identity();
          u(3, 3) = -1.0;
          return u;
        } else {
          // X on the target when the control is logical 1 (m = -1/2).
          return embed_conditional(v.target, pauli::x(), SpinState::Down);
        }
      },
      g);
}

// |Tr(U^dagger V)|^2 / 16
inline double process_fidelity(const Operator4& u, const Operator4& v) {
  if (!is_unitary(u, 1e-8) || !is_unitary(v, 1e-8))
    throw ContractViolation("process_fidelity: operands must be unitary");
  return std::norm((u.adjoint() * v).trace()) / 16.0;
}

// True when ||U - e^{i phi} V||_F <= tol with phi = arg Tr(V^dagger U).
inline bool equal_up_to_global_phase(const Operator4& u, const Operator4& v, double tol) {
  const Complex overlap = (v.adjoint() * u).trace();
  if (std::abs(overlap) == 0.0) return false;
  const Complex phase = overlap / std::abs(overlap);
  return (u - phase * v).norm() <= tol;
}

}  // namespace hfqpu
