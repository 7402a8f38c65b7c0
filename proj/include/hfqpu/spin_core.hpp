#pragma once

// Linear algebra over the 4-dimensional nucleus (x) electron Hilbert space.
//
// Basis convention used everywhere in the library: index = 2*bit(m_I) + bit(m_S)
// with bit(+1/2) = 0 and bit(-1/2) = 1. The nuclear spin is the left
// (most-significant) tensor factor, so the basis reads |m_I, m_S>:
//
//   0: |+1/2,+1/2>   1: |+1/2,-1/2>   2: |-1/2,+1/2>   3: |-1/2,-1/2>
//
// Logical |0> is m = +1/2 and logical |1> is m = -1/2 for both spins.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace hfqpu {

using Complex = std::complex<double>;
using Operator4 = Eigen::Matrix4cd;
using StateVector4 = Eigen::Vector4cd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

enum class SpinAxis { X, Y, Z };
enum class SpinChannel { Electron, Nuclear };

// Projection of a single spin-1/2 on z: Up is m = +1/2 (logical 0).
enum class SpinState { Up, Down };

constexpr int bit(SpinState s) { return s == SpinState::Up ? 0 : 1; }

constexpr SpinState state_from_bit(int b) { return b == 0 ? SpinState::Up : SpinState::Down; }

constexpr double projection(SpinState s) { return s == SpinState::Up ? 0.5 : -0.5; }

constexpr int basis_index(SpinState nuclear, SpinState electron) {
  return 2 * bit(nuclear) + bit(electron);
}

constexpr SpinState nuclear_state(int index) { return state_from_bit((index >> 1) & 1); }
constexpr SpinState electron_state(int index) { return state_from_bit(index & 1); }

constexpr SpinChannel other(SpinChannel c) {
  return c == SpinChannel::Electron ? SpinChannel::Nuclear : SpinChannel::Electron;
}

// Basis index for a given (addressed spin, spectator spin) pair.
constexpr int basis_index(SpinChannel addressed, SpinState addressed_state, SpinState spectator) {
  return addressed == SpinChannel::Nuclear ? basis_index(addressed_state, spectator)
                                           : basis_index(spectator, addressed_state);
}

inline std::string_view to_string(SpinChannel c) {
  return c == SpinChannel::Electron ? "electron" : "nuclear";
}

inline std::string_view to_string(SpinState s) { return s == SpinState::Up ? "up" : "down"; }

inline SpinChannel parse_channel(std::string_view name) {
  if (name == "electron" || name == "e" || name == "S") return SpinChannel::Electron;
  if (name == "nuclear" || name == "nucleus" || name == "n" || name == "I") return SpinChannel::Nuclear;
  throw std::invalid_argument("unknown spin channel '" + std::string(name) + "'");
}

inline SpinState parse_spin_state(std::string_view name) {
  if (name == "up") return SpinState::Up;
  if (name == "down") return SpinState::Down;
  throw std::invalid_argument("unknown spin state '" + std::string(name) + "'");
}

// m must be exactly +1/2 or -1/2.
inline SpinState spin_state_from_projection(double m) {
  if (m == 0.5) return SpinState::Up;
  if (m == -0.5) return SpinState::Down;
  throw std::invalid_argument("spin projection must be +1/2 or -1/2, got " + std::to_string(m));
}

// Single spin-1/2 operators s_x, s_y, s_z in the (up, down) basis.
inline Matrix2c spin_half(SpinAxis axis) {
  Matrix2c s;
  switch (axis) {
    case SpinAxis::X: s << 0.0, 0.5, 0.5, 0.0; break;
    case SpinAxis::Y: s << 0.0, -0.5 * kI, 0.5 * kI, 0.0; break;
    case SpinAxis::Z: s << 0.5, 0.0, 0.0, -0.5; break;
  }
  return s;
}

// nuclear (x) electron
inline Operator4 kron(const Matrix2c& nuclear, const Matrix2c& electron) {
  Operator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = nuclear(i, j) * electron;
  return out;
}

// Acts with `op` on one spin and identity on the other.
inline Operator4 embed(SpinChannel channel, const Matrix2c& op) {
  return channel == SpinChannel::Electron ? kron(Matrix2c::Identity(), op)
                                          : kron(op, Matrix2c::Identity());
}

// `op` acts on `channel` only in the subspace where the other spin is `spectator`.
inline Operator4 embed_conditional(SpinChannel channel, const Matrix2c& op, SpinState spectator) {
  Matrix2c on = Matrix2c::Zero();
  Matrix2c off = Matrix2c::Zero();
  on(bit(spectator), bit(spectator)) = 1.0;
  off(1 - bit(spectator), 1 - bit(spectator)) = 1.0;
  const Matrix2c id = Matrix2c::Identity();
  if (channel == SpinChannel::Electron) return kron(on, op) + kron(off, id);
  return kron(op, on) + kron(id, off);
}

inline Operator4 spin_operator(SpinChannel channel, SpinAxis axis) {
  return embed(channel, spin_half(axis));
}

inline StateVector4 basis_state(double m_I, double m_S) {
  StateVector4 v = StateVector4::Zero();
  v(basis_index(spin_state_from_projection(m_I), spin_state_from_projection(m_S))) = 1.0;
  return v;
}

inline StateVector4 basis_state(int index) {
  if (index < 0 || index > 3) throw std::invalid_argument("basis index out of range");
  StateVector4 v = StateVector4::Zero();
  v(index) = 1.0;
  return v;
}

inline Operator4 matmul(const Operator4& a, const Operator4& b) { return a * b; }
inline Operator4 adjoint(const Operator4& a) { return a.adjoint(); }
inline double frobenius_distance(const Operator4& a, const Operator4& b) { return (a - b).norm(); }
inline Operator4 commutator(const Operator4& a, const Operator4& b) { return a * b - b * a; }

inline bool is_finite(const Operator4& a) { return a.allFinite(); }
inline bool is_finite(const StateVector4& v) { return v.allFinite(); }

inline bool is_hermitian(const Operator4& a, double tol) {
  return a.allFinite() && (a - a.adjoint()).norm() <= tol;
}

inline bool is_unitary(const Operator4& u, double tol) {
  return u.allFinite() && (u.adjoint() * u - Operator4::Identity()).norm() <= tol;
}

inline bool is_diagonal(const Operator4& a) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && a(i, j) != Complex{}) return false;
  return true;
}

inline Operator4 diagonal_phases(const Eigen::Vector4d& phases) {
  Operator4 d = Operator4::Zero();
  for (int i = 0; i < 4; ++i) d(i, i) = std::polar(1.0, phases(i));
  return d;
}

}  // namespace hfqpu
