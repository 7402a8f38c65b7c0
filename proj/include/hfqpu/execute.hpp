#pragma once

// Execution backends for pulse sequences.
//
// Ideal: ordered product of the exact element unitaries.
//
// Physical: integrates the lab-frame Schrodinger equation with
// H(t) = H_static + (gamma_e S_x - gamma_n I_x) H_x cos(omega t + phi) for every
// RF pulse (both spins see the shared drive, counter-rotating terms included)
// and reports the result in a frame comparable with the Ideal backend.
//
// The reporting frame is diagonal, exp(i*Phi(t)). During RF pulses Phi advances
// with the full static Hamiltonian, so a resonant pulse is a plain rotation
// about the requested axis. During delays it advances with the Zeeman part
// only, so free evolution leaves exp(-i*a*tau*S_z*I_z). Virtual Z elements
// only shift Phi; their effect reaches the dynamics through the drive phases
// of later pulses, which the backend derives from the current frame.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hfqpu/compiler.hpp"
#include "hfqpu/dynamics.hpp"
#include "hfqpu/hamiltonian.hpp"
#include "hfqpu/pulse.hpp"

namespace hfqpu {

enum class Backend { Ideal, Physical };

inline std::string_view to_string(Backend b) { return b == Backend::Ideal ? "ideal" : "physical"; }

inline Backend parse_backend(std::string_view s) {
  if (s == "ideal") return Backend::Ideal;
  if (s == "physical") return Backend::Physical;
  throw std::invalid_argument("unknown backend '" + std::string(s) + "'");
}

struct ExecutionResult {
  Operator4 unitary = Operator4::Identity();
  double duration = 0.0;
  std::int64_t steps = 0;
  std::vector<std::string> warnings;
};

inline Operator4 execute_ideal(const PulseSequence& seq, const SystemParams& p) {
  validate(seq);
  Operator4 u = Operator4::Identity();
  for (const auto& e : seq.elements) u = (element_unitary(e, p) * u).eval();
  return std::polar(1.0, seq.global_phase) * u;
}

// Default integrator step for a sequence: 50 samples per period of the
// fastest Bohr frequency or carrier.
inline double default_time_step(const PulseSequence& seq, const SystemParams& p) {
  double w = max_bohr_frequency(p);
  for (const auto& e : seq.elements)
    if (const auto* pulse = std::get_if<RfPulse>(&e)) w = std::max(w, std::abs(pulse->carrier_omega));
  return default_time_step(w);
}

namespace detail {

// Lab-frame drive phase that makes `pulse` rotate about its requested axis in
// the reporting frame, given the frame offsets accumulated so far.
inline double lab_drive_phase(const RfPulse& pulse, const SystemParams& p, const PhysicalInput& coupling,
                              const Eigen::Vector4d& frame_offset) {
  const SpinState spectator = pulse.condition.value_or(SpinState::Up);
  const int up = basis_index(pulse.channel, SpinState::Up, spectator);
  const int down = basis_index(pulse.channel, SpinState::Down, spectator);
  const double splitting = signed_splitting(p, pulse.channel, spectator);
  const double kappa = pulse.channel == SpinChannel::Electron ? coupling.gamma_e : -coupling.gamma_n;
  const double sign_shift = kappa < 0.0 ? std::numbers::pi : 0.0;
  const double offset = frame_offset(up) - frame_offset(down);
  // Co-rotating component of cos(wt + phi) is e^{-i(wt+phi)} for a positive
  // splitting and e^{+i(wt+phi)} for a negative one.
  return splitting >= 0.0 ? pulse.phase + offset + sign_shift : -pulse.phase - offset + sign_shift;
}

inline double drive_coupling(SpinChannel c, const PhysicalInput& coupling) {
  return c == SpinChannel::Electron ? coupling.gamma_e : coupling.gamma_n;
}

}  // namespace detail

inline ExecutionResult execute_physical(const PulseSequence& seq, const SystemParams& p,
                                        const PhysicalInput& coupling, std::optional<double> dt = {}) {
  validate(seq);
  ExecutionResult out;
  const double dt_default = default_time_step(seq, p);
  const double step = dt.value_or(dt_default);
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("dt must be positive");
  if (step > dt_default * (1.0 + 1e-12))
    out.warnings.push_back("dt " + std::to_string(step) + " is coarser than the default " +
                           std::to_string(dt_default));

  const Operator4 h0 = static_hamiltonian(p);
  Eigen::Vector4d frame_offset = Eigen::Vector4d::Zero();
  Eigen::Vector4d zz_diag;
  for (int i = 0; i < 4; ++i)
    zz_diag(i) = projection(nuclear_state(i)) * projection(electron_state(i));

  Operator4 u_lab = Operator4::Identity();
  double t = 0.0;
  for (const auto& e : seq.elements) {
    if (const auto* pulse = std::get_if<RfPulse>(&e)) {
      if (pulse->duration == 0.0) continue;
      const double gamma = detail::drive_coupling(pulse->channel, coupling);
      if (gamma == 0.0)
        throw std::invalid_argument("no drive coupling for the " + std::string(to_string(pulse->channel)) +
                                    " channel");
      DriveParams drive;
      drive.amplitude_Hx = 2.0 * pulse->rabi_rate / std::abs(gamma);
      drive.frequency_omega = pulse->carrier_omega;
      drive.phase = detail::lab_drive_phase(*pulse, p, coupling, frame_offset);
      drive.duration = pulse->duration;
      const PropagationSpec spec{t, t + pulse->duration, step, Integrator::Midpoint};
      out.steps += step_count(spec);
      const Operator4 segment =
          propagate([&](double time) -> Operator4 { return h0 + drive_hamiltonian(coupling, drive, time); }, spec);
      u_lab = (segment * u_lab).eval();
      t += pulse->duration;
    } else if (const auto* delay = std::get_if<Delay>(&e)) {
      if (delay->duration == 0.0) continue;
      u_lab = (expm_i_hermitian(h0, delay->duration) * u_lab).eval();
      frame_offset -= p.a * delay->duration * zz_diag;
      t += delay->duration;
    } else {
      const auto& vz = std::get<VirtualZ>(e);
      const Operator4 g = generator_operator(z_generator(vz.target));
      for (int i = 0; i < 4; ++i) frame_offset(i) -= vz.angle * g(i, i).real();
    }
  }
  out.unitary = std::polar(1.0, seq.global_phase) * diagonal_phases(frame_offset) * to_rotating_frame(u_lab, h0, t);
  out.duration = t;
  if (!is_unitary(out.unitary, 1e-8)) throw ContractViolation("physical backend lost unitarity");
  return out;
}

inline ExecutionResult execute(const PulseSequence& seq, Backend backend, const SystemParams& p,
                               const PhysicalInput& coupling, std::optional<double> dt = {}) {
  if (backend == Backend::Physical) return execute_physical(seq, p, coupling, dt);
  ExecutionResult out;
  out.unitary = execute_ideal(seq, p);
  out.duration = seq.physical_duration();
  return out;
}

}  // namespace hfqpu
