#pragma once

// Time evolution: exact exponentials of Hermitian generators, midpoint-rule
// propagation of time-dependent Hamiltonians, rotating-frame bookkeeping.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "hfqpu/errors.hpp"
#include "hfqpu/spin_core.hpp"

namespace hfqpu {

inline constexpr std::int64_t kMaxPropagationSteps = 100'000'000;

enum class Integrator { Midpoint };

struct PropagationSpec {
  double t0 = 0.0;
  double t1 = 0.0;
  double dt = 0.0;
  Integrator method = Integrator::Midpoint;
};

// exp(-i * h * t) for Hermitian h, through its eigendecomposition.
inline Operator4 expm_i_hermitian(const Operator4& h, double t) {
  const double scale = std::max(1.0, h.norm());
  if (!is_hermitian(h, 1e-10 * scale))
    throw ContractViolation("expm_i_hermitian: generator is not Hermitian");
  if (t == 0.0) return Operator4::Identity();
  if (is_diagonal(h)) {
    Operator4 u = Operator4::Zero();
    for (int k = 0; k < 4; ++k) u(k, k) = std::polar(1.0, -h(k, k).real() * t);
    return u;
  }
  if (h.imag().isZero(0.0)) {
    // Real symmetric (every S_x-driven Hamiltonian here): cheaper real solver.
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(h.real());
    const Eigen::Matrix4d& v = solver.eigenvectors();
    Eigen::Vector4cd phases;
    for (int k = 0; k < 4; ++k) phases(k) = std::polar(1.0, -solver.eigenvalues()(k) * t);
    return v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();
  }
  const Eigen::SelfAdjointEigenSolver<Operator4> solver(h);
  const Eigen::Vector4d& w = solver.eigenvalues();
  const Operator4& v = solver.eigenvectors();
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::polar(1.0, -w(k) * t);
  return v * phases.asDiagonal() * v.adjoint();
}

// Number of equal steps covering [t0, t1] with step no larger than dt.
inline std::int64_t step_count(const PropagationSpec& spec) {
  if (!std::isfinite(spec.t0) || !std::isfinite(spec.t1) || !std::isfinite(spec.dt))
    throw ContractViolation("propagate: non-finite time specification");
  if (spec.t1 < spec.t0) throw ContractViolation("propagate: t1 < t0");
  if (!(spec.dt > 0.0)) throw ContractViolation("propagate: dt must be positive");
  const double span = spec.t1 - spec.t0;
  if (span == 0.0) return 0;
  const double n = std::ceil(span / spec.dt * (1.0 - 1e-12));
  if (n > static_cast<double>(kMaxPropagationSteps))
    throw ContractViolation("propagate: " + std::to_string(n) + " steps exceeds the limit of " +
                            std::to_string(kMaxPropagationSteps) + "; increase dt");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

// Time-ordered product of exp(-i H(t_k + h/2) h) over an equal-step grid.
// `hamiltonian(t)` must return a Hermitian Operator4.
template <class HamiltonianFn>
  requires std::invocable<HamiltonianFn&, double>
Operator4 propagate(HamiltonianFn&& hamiltonian, const PropagationSpec& spec) {
  const std::int64_t n = step_count(spec);
  Operator4 u = Operator4::Identity();
  if (n == 0) return u;
  const double h = (spec.t1 - spec.t0) / static_cast<double>(n);
  for (std::int64_t k = 0; k < n; ++k) {
    const double t_mid = spec.t0 + (static_cast<double>(k) + 0.5) * h;
    u = (expm_i_hermitian(hamiltonian(t_mid), h) * u).eval();
  }
  return u;
}

// exp(+i*h0*t) * u_lab: evolution under h0 alone maps to the identity.
inline Operator4 to_rotating_frame(const Operator4& u_lab, const Operator4& h0, double t) {
  if (!is_diagonal(h0)) throw ContractViolation("to_rotating_frame: frame generator must be diagonal");
  return expm_i_hermitian(h0, -t) * u_lab;
}

// At least 50 samples per period of the fastest frequency in the problem.
inline double default_time_step(double omega_max) {
  if (!(omega_max > 0.0)) return 1.0;
  return 2.0 * std::numbers::pi / omega_max / 50.0;
}

}  // namespace hfqpu
