#pragma once

// Lowering of logical gates to pulse sequences.
//
//   transverse rotations -> resonant pulses, one per hyperfine line when the
//                           lines are split (a != 0), a single pulse otherwise
//   R_z, Z               -> virtual Z
//   H                    -> R_y(pi/2) . R_z(pi)   (= -i H)
//   CZ                   -> (90 I_z)(90 S_z)(-90 2I_zS_z), the ZZ part as a
//                           free-evolution delay under the hyperfine coupling
//   CNOT(c, t)           -> H(t) . CZ . H(t)

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "hfqpu/gates.hpp"
#include "hfqpu/hamiltonian.hpp"
#include "hfqpu/pulse.hpp"

namespace hfqpu {

// Rabi rate available on each channel, rad/s.
struct DriveBudget {
  double electron = 1.0;
  double nuclear = 1.0;

  double for_channel(SpinChannel c) const { return c == SpinChannel::Electron ? electron : nuclear; }
};

struct CompileResult {
  PulseSequence sequence;
  std::vector<std::string> warnings;

  void append(const CompileResult& other) {
    sequence.then(other.sequence);
    for (const auto& w : other.warnings)
      if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
  }
};

struct ZZDelay {
  Delay delay;
  double global_phase = 0.0;  // 0 or a multiple of pi
};

// Free evolution under a*S_z*I_z for time tau is exp(-i*(a*tau/2)*2I_zS_z), so
// tau = 2*theta/a. Angles that would need negative time are shifted by 2*pi,
// which multiplies the unitary by -1 (eigenvalues of 2I_zS_z are +-1/2).
inline ZZDelay zz_delay(double theta, const SystemParams& p) {
  if (p.a == 0.0) throw std::invalid_argument("zz_delay: no coupling available (a = 0)");
  if (!std::isfinite(theta)) throw std::invalid_argument("zz_delay: angle must be finite");
  const double two_pi = 2.0 * std::numbers::pi;
  double k = 0.0;
  if (p.a > 0.0 && theta < 0.0) k = std::ceil(-theta / two_pi);
  if (p.a < 0.0 && theta > 0.0) k = -std::ceil(theta / two_pi);
  const double shifted = theta + two_pi * k;
  ZZDelay out;
  out.delay.duration = std::abs(2.0 * shifted / p.a);
  out.global_phase = std::fmod(std::abs(k), 2.0) == 1.0 ? std::numbers::pi : 0.0;
  return out;
}

namespace detail {

inline std::string selectivity_warning(SpinChannel c, double rabi, double a) {
  return "selectivity: " + std::string(to_string(c)) + " rabi rate " + std::to_string(rabi) +
         " is not small against a/5 = " + std::to_string(std::abs(a) / 5.0);
}

// exp(-i*theta*(cos(axis) S_x + sin(axis) S_y)) on one channel.
inline CompileResult transverse(SpinChannel c, double theta, double axis, const SystemParams& p,
                                const DriveBudget& budget) {
  CompileResult out;
  if (theta == 0.0) return out;
  const double rabi = budget.for_channel(c);
  if (!(rabi > 0.0) || !std::isfinite(rabi))
    throw std::invalid_argument("drive budget for " + std::string(to_string(c)) + " must be > 0");
  RfPulse pulse;
  pulse.channel = c;
  pulse.rabi_rate = rabi;
  pulse.phase = theta < 0.0 ? axis + std::numbers::pi : axis;
  pulse.duration = std::abs(theta) / rabi;
  if (p.a == 0.0) {
    pulse.carrier_omega = transition_for(p, c, SpinState::Up).angular_frequency;
    out.sequence.elements.push_back(pulse);
    return out;
  }
  // Lines are split by the coupling: address each one selectively. The two
  // pulses act on orthogonal subspaces, so their product is the unconditional
  // rotation.
  for (SpinState spectator : {SpinState::Up, SpinState::Down}) {
    pulse.condition = spectator;
    pulse.carrier_omega = transition_for(p, c, spectator).angular_frequency;
    out.sequence.elements.push_back(pulse);
  }
  if (rabi >= std::abs(p.a) / 5.0) out.warnings.push_back(selectivity_warning(c, rabi, p.a));
  return out;
}

inline CompileResult virtual_z(SpinChannel c, double theta) {
  CompileResult out;
  out.sequence.elements.push_back(
      VirtualZ{c == SpinChannel::Electron ? ZTarget::Electron : ZTarget::Nuclear, theta});
  return out;
}

inline CompileResult hadamard(SpinChannel c, const SystemParams& p, const DriveBudget& budget) {
  CompileResult out = virtual_z(c, std::numbers::pi);
  out.append(transverse(c, std::numbers::pi / 2.0, std::numbers::pi / 2.0, p, budget));
  return out;
}

inline CompileResult controlled_z(const SystemParams& p) {
  CompileResult out;
  const PulseSequence cz = paper_cz_sequence();
  for (const auto& e : cz.elements) {
    const auto& vz = std::get<VirtualZ>(e);
    if (vz.target == ZTarget::ZZ) {
      const ZZDelay d = zz_delay(vz.angle, p);
      out.sequence.elements.push_back(d.delay);
      out.sequence.global_phase += d.global_phase;
    } else {
      out.sequence.elements.push_back(e);
    }
  }
  out.sequence.global_phase += cz.global_phase;
  return out;
}

}  // namespace detail

inline CompileResult compile_gate(const Gate& g, const SystemParams& p, const DriveBudget& budget) {
  validate(g);
  constexpr double pi = std::numbers::pi;
  return std::visit(
      [&](const auto& v) -> CompileResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gate::RX>) return detail::transverse(v.target, v.angle, 0.0, p, budget);
        else if constexpr (std::is_same_v<T, gate::RY>) return detail::transverse(v.target, v.angle, pi / 2.0, p, budget);
        else if constexpr (std::is_same_v<T, gate::RZ>) return detail::virtual_z(v.target, v.angle);
        else if constexpr (std::is_same_v<T, gate::H>) return detail::hadamard(v.target, p, budget);
        else if constexpr (std::is_same_v<T, gate::X>) return detail::transverse(v.target, pi, 0.0, p, budget);
        else if constexpr (std::is_same_v<T, gate::Z>) return detail::virtual_z(v.target, pi);
        else if constexpr (std::is_same_v<T, gate::CZ>) return detail::controlled_z(p);
        else {
          CompileResult out = detail::hadamard(v.target, p, budget);
          out.append(detail::controlled_z(p));
          out.append(detail::hadamard(v.target, p, budget));
          return out;
        }
      },
      g);
}

// Gates applied in list order.
inline CompileResult compile_circuit(const std::vector<Gate>& circuit, const SystemParams& p,
                                     const DriveBudget& budget) {
  CompileResult out;
  for (const auto& g : circuit) out.append(compile_gate(g, p, budget));
  return out;
}

}  // namespace hfqpu
