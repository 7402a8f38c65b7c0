#pragma once

// Static hyperfine Hamiltonian, transverse drive term, spectrum and
// single-spin-flip transition table. Units: hbar = 1, every Hamiltonian is an
// angular frequency in rad/s.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hfqpu/spin_core.hpp"

namespace hfqpu {

// Raw physical constants. Only to_system_params() turns these into
// frequencies; the drive term reads gamma_e / gamma_n directly.
struct PhysicalInput {
  double g_factor = 0.0;
  double bohr_magneton_over_hbar = 0.0;  // rad s^-1 T^-1
  double field_B = 0.0;                  // T, static field along z
  double gamma_n = 0.0;                  // rad s^-1 T^-1
  double gamma_e = 0.0;                  // rad s^-1 T^-1, drive coupling of the electron
  double hyperfine_A_over_hbar = 0.0;    // rad s^-1

  bool operator==(const PhysicalInput&) const = default;
};

struct SystemParams {
  double omega_e = 0.0;  // electron Zeeman, g*beta*B/hbar
  double omega_n = 0.0;  // nuclear Zeeman, gamma_n*B
  double a = 0.0;        // hyperfine coupling, A/hbar

  // Secular approximation holds when the electron Zeeman term dominates.
  bool paper_regime_ok() const { return std::abs(omega_e) >= 10.0 * std::abs(a); }

  bool operator==(const SystemParams&) const = default;
};

inline SystemParams to_system_params(const PhysicalInput& in) {
  if (!(in.field_B >= 0.0)) throw std::invalid_argument("field_B must be >= 0");
  return {in.g_factor * in.bohr_magneton_over_hbar * in.field_B, in.gamma_n * in.field_B,
          in.hyperfine_A_over_hbar};
}

// gamma_e = g*beta/hbar, the default relation between the drive coupling and
// the static electron Zeeman term.
inline PhysicalInput with_default_gamma_e(PhysicalInput in) {
  in.gamma_e = in.g_factor * in.bohr_magneton_over_hbar;
  return in;
}

// Coil model for runs specified directly in frequency units: one unit of H_x
// gives the same Rabi rate on both spins, so rabi = H_x / 2 on either channel.
inline PhysicalInput unit_drive_coupling() {
  PhysicalInput in;
  in.gamma_e = 1.0;
  in.gamma_n = 1.0;
  return in;
}

// Dimensionless demo regime: Rabi rates of order 1 << a << omega_e.
inline SystemParams default_demo_params() { return {1000.0, 10.0, 50.0}; }

// Hydrogen-like atom at 1 T from CODATA constants (not taken from any
// experiment this library reproduces).
inline PhysicalInput hydrogen_like_1T() {
  PhysicalInput in;
  in.g_factor = 2.00231930436256;
  in.bohr_magneton_over_hbar = 9.2740100783e-24 / 1.054571817e-34;
  in.field_B = 1.0;
  in.gamma_n = 2.6752218744e8;
  in.hyperfine_A_over_hbar = 2.0 * std::numbers::pi * 1420.405751768e6;
  return with_default_gamma_e(in);
}

struct DriveParams {
  double amplitude_Hx = 0.0;
  double frequency_omega = 0.0;
  double phase = 0.0;
  double duration = 0.0;
};

// E(m_I, m_S) = omega_e*m_S - omega_n*m_I + a*m_I*m_S
inline double level_energy(const SystemParams& p, SpinState nuclear, SpinState electron) {
  const double mi = projection(nuclear);
  const double ms = projection(electron);
  return p.omega_e * ms - p.omega_n * mi + p.a * mi * ms;
}

inline Operator4 static_hamiltonian(const SystemParams& p) {
  const Operator4 sz = spin_operator(SpinChannel::Electron, SpinAxis::Z);
  const Operator4 iz = spin_operator(SpinChannel::Nuclear, SpinAxis::Z);
  return p.omega_e * sz - p.omega_n * iz + p.a * (sz * iz);
}

// Zeeman part only; the frame in which free evolution leaves the coupling term.
inline Operator4 zeeman_hamiltonian(const SystemParams& p) {
  return static_hamiltonian({p.omega_e, p.omega_n, 0.0});
}

inline std::array<double, 4> energy_levels(const SystemParams& p) {
  const Operator4 h = static_hamiltonian(p);
  return {h(0, 0).real(), h(1, 1).real(), h(2, 2).real(), h(3, 3).real()};
}

// One single-spin-flip line. `from_index` holds the addressed spin up,
// `to_index` the same state with it flipped down.
struct Transition {
  int from_index = 0;
  int to_index = 0;
  SpinChannel channel = SpinChannel::Electron;
  SpinState spectator = SpinState::Up;
  double angular_frequency = 0.0;  // |E(from) - E(to)|
};

using TransitionTable = std::array<Transition, 4>;

inline Transition transition_for(const SystemParams& p, SpinChannel channel, SpinState spectator) {
  const auto e = energy_levels(p);
  Transition t;
  t.channel = channel;
  t.spectator = spectator;
  t.from_index = basis_index(channel, SpinState::Up, spectator);
  t.to_index = basis_index(channel, SpinState::Down, spectator);
  t.angular_frequency = std::abs(e[t.from_index] - e[t.to_index]);
  return t;
}

// Signed splitting E(up) - E(down) of the addressed spin; its sign fixes which
// circular component of a linear drive is co-rotating.
inline double signed_splitting(const SystemParams& p, SpinChannel channel, SpinState spectator) {
  const auto e = energy_levels(p);
  return e[basis_index(channel, SpinState::Up, spectator)] -
         e[basis_index(channel, SpinState::Down, spectator)];
}

// Electron lines at |omega_e +- a/2| conditioned on m_I, nuclear lines at
// |omega_n -+ a/2| conditioned on m_S.
inline TransitionTable transition_table(const SystemParams& p) {
  return {transition_for(p, SpinChannel::Electron, SpinState::Up),
          transition_for(p, SpinChannel::Electron, SpinState::Down),
          transition_for(p, SpinChannel::Nuclear, SpinState::Up),
          transition_for(p, SpinChannel::Nuclear, SpinState::Down)};
}

// Largest Bohr frequency of the static Hamiltonian (any pair of levels).
inline double max_bohr_frequency(const SystemParams& p) {
  const auto e = energy_levels(p);
  double w = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) w = std::max(w, std::abs(e[i] - e[j]));
  return w;
}

// (gamma_e*S_x - gamma_n*I_x) * H_x * cos(omega*t + phase)
inline Operator4 drive_hamiltonian(const PhysicalInput& in, const DriveParams& d, double t) {
  const double envelope = d.amplitude_Hx * std::cos(d.frequency_omega * t + d.phase);
  return envelope * (in.gamma_e * spin_operator(SpinChannel::Electron, SpinAxis::X) -
                     in.gamma_n * spin_operator(SpinChannel::Nuclear, SpinAxis::X));
}

}  // namespace hfqpu
