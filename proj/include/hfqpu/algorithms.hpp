#pragma once

// Two-qubit Deutsch-Jozsa and Grover on the nucleus/electron register, with
// projective measurement in the |m_I, m_S> basis.
//
// Wire roles: nucleus = query / first search qubit (left bit of an outcome
// label), electron = ancilla / second search qubit (right bit).
// Every circuit goes through compile_gate, never through raw unitaries.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hfqpu/compiler.hpp"
#include "hfqpu/execute.hpp"
#include "hfqpu/gates.hpp"

namespace hfqpu {

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

struct MeasurementCounts {
  std::array<std::uint64_t, 4> counts{};
  std::array<double, 4> probabilities{};
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

namespace detail {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Uniform double in [0, 1) that depends only on (seed, shot): shots can be
// drawn in any order or in parallel with identical results.
constexpr double shot_uniform(std::uint64_t seed, std::uint64_t shot) {
  const std::uint64_t key = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
  const std::uint64_t bits = detail::mix64(key ^ (shot * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline std::array<double, 4> probabilities(const StateVector4& state) {
  std::array<double, 4> p{};
  for (int i = 0; i < 4; ++i) p[i] = std::norm(state(i));
  return p;
}

inline MeasurementCounts measure(const StateVector4& state, std::uint64_t shots, std::uint64_t seed) {
  if (!is_finite(state) || std::abs(state.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument("measure: state is not normalized");
  if (shots < 1) throw std::invalid_argument("measure: shots must be >= 1");
  MeasurementCounts out;
  out.shots = shots;
  out.seed = seed;
  out.probabilities = probabilities(state);
  std::array<double, 4> cumulative{};
  double running = 0.0;
  int last_nonzero = 0;
  for (int i = 0; i < 4; ++i) {
    running += out.probabilities[i];
    cumulative[i] = running;
    if (out.probabilities[i] > 0.0) last_nonzero = i;
  }
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = shot_uniform(seed, s);
    int outcome = last_nonzero;
    for (int i = 0; i < 4; ++i) {
      if (out.probabilities[i] > 0.0 && u < cumulative[i]) {
        outcome = i;
        break;
      }
    }
    ++out.counts[outcome];
  }
  return out;
}

// "00", "01", "10", "11": nucleus bit then electron bit.
inline std::string outcome_label(int index) {
  return std::string{static_cast<char>('0' + ((index >> 1) & 1)), static_cast<char>('0' + (index & 1))};
}

// ---------------------------------------------------------------------------
// Shared run plumbing
// ---------------------------------------------------------------------------

struct RunSettings {
  SystemParams system = default_demo_params();
  PhysicalInput coupling = unit_drive_coupling();
  DriveBudget drive{};
  Backend backend = Backend::Ideal;
  std::optional<double> dt;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 42;
};

struct AlgorithmRun {
  Backend backend = Backend::Ideal;
  MeasurementCounts measurement;
  std::optional<double> fidelity_vs_ideal;  // physical backend only
  double duration = 0.0;
  std::vector<std::string> warnings;
};

// Compiles `circuit`, executes it from |00>, measures.
inline AlgorithmRun run_circuit(const std::vector<Gate>& circuit, const RunSettings& s) {
  const CompileResult compiled = compile_circuit(circuit, s.system, s.drive);
  const ExecutionResult exec = execute(compiled.sequence, s.backend, s.system, s.coupling, s.dt);
  AlgorithmRun run;
  run.backend = s.backend;
  run.duration = exec.duration;
  run.warnings = compiled.warnings;
  run.warnings.insert(run.warnings.end(), exec.warnings.begin(), exec.warnings.end());
  if (s.backend == Backend::Physical)
    run.fidelity_vs_ideal = process_fidelity(exec.unitary, execute_ideal(compiled.sequence, s.system));
  const StateVector4 state = exec.unitary * basis_state(0);
  run.measurement = measure(state / state.norm(), s.shots, s.seed);
  return run;
}

inline nlohmann::json to_json(const AlgorithmRun& run) {
  nlohmann::json counts = nlohmann::json::object();
  for (int i = 0; i < 4; ++i) counts[outcome_label(i)] = run.measurement.counts[i];
  nlohmann::json j = {{"probabilities", run.measurement.probabilities},
                      {"counts", counts},
                      {"shots", run.measurement.shots},
                      {"seed", run.measurement.seed},
                      {"backend", std::string(to_string(run.backend))},
                      {"fidelity_vs_ideal", nullptr}};
  if (run.fidelity_vs_ideal) j["fidelity_vs_ideal"] = *run.fidelity_vs_ideal;
  if (!run.warnings.empty()) j["warnings"] = run.warnings;
  return j;
}

// ---------------------------------------------------------------------------
// Deutsch-Jozsa
// ---------------------------------------------------------------------------

enum class DJOracle { Const0, Const1, BalancedId, BalancedNot };
enum class DJVerdict { Constant, Balanced };

inline std::string_view to_string(DJOracle o) {
  switch (o) {
    case DJOracle::Const0: return "const0";
    case DJOracle::Const1: return "const1";
    case DJOracle::BalancedId: return "balanced_id";
    case DJOracle::BalancedNot: return "balanced_not";
  }
  return "";
}

inline DJOracle parse_dj_oracle(std::string_view s) {
  if (s == "const0") return DJOracle::Const0;
  if (s == "const1") return DJOracle::Const1;
  if (s == "balanced_id" || s == "balanced-id" || s == "id") return DJOracle::BalancedId;
  if (s == "balanced_not" || s == "balanced-not" || s == "not") return DJOracle::BalancedNot;
  throw std::invalid_argument("unknown Deutsch-Jozsa oracle '" + std::string(s) + "'");
}

inline std::string_view to_string(DJVerdict v) { return v == DJVerdict::Constant ? "Constant" : "Balanced"; }

// f: {0,1} -> {0,1}
inline int dj_truth(DJOracle o, int x) {
  switch (o) {
    case DJOracle::Const0: return 0;
    case DJOracle::Const1: return 1;
    case DJOracle::BalancedId: return x;
    case DJOracle::BalancedNot: return 1 - x;
  }
  return 0;
}

// U_f |x, y> = |x, y xor f(x)> with x on the nucleus and y on the electron.
inline std::vector<Gate> dj_oracle_gates(DJOracle o) {
  const gate::CNOT cnot{SpinChannel::Nuclear, SpinChannel::Electron};
  const gate::X flip{SpinChannel::Electron};
  switch (o) {
    case DJOracle::Const0: return {};
    case DJOracle::Const1: return {flip};
    case DJOracle::BalancedId: return {cnot};
    case DJOracle::BalancedNot: return {cnot, flip};
  }
  return {};
}

inline std::vector<Gate> dj_circuit(DJOracle o) {
  std::vector<Gate> c{gate::X{SpinChannel::Electron}, gate::H{SpinChannel::Nuclear},
                      gate::H{SpinChannel::Electron}};
  for (const auto& g : dj_oracle_gates(o)) c.push_back(g);
  c.push_back(gate::H{SpinChannel::Nuclear});
  return c;
}

struct DJResult {
  DJOracle oracle = DJOracle::Const0;
  DJVerdict verdict = DJVerdict::Constant;
  double query_one_probability = 0.0;  // exact, before sampling
  AlgorithmRun run;
};

inline DJResult deutsch_jozsa(DJOracle oracle, const RunSettings& s) {
  DJResult r;
  r.oracle = oracle;
  r.run = run_circuit(dj_circuit(oracle), s);
  const auto& m = r.run.measurement;
  r.query_one_probability = m.probabilities[2] + m.probabilities[3];
  const std::uint64_t zeros = m.counts[0] + m.counts[1];
  const std::uint64_t ones = m.counts[2] + m.counts[3];
  r.verdict = zeros > ones ? DJVerdict::Constant : DJVerdict::Balanced;
  return r;
}

inline nlohmann::json to_json(const DJResult& r) {
  nlohmann::json j = to_json(r.run);
  j["algorithm"] = "dj";
  j["oracle"] = std::string(to_string(r.oracle));
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

// ---------------------------------------------------------------------------
// Grover
// ---------------------------------------------------------------------------

inline void check_marked(int marked) {
  if (marked < 0 || marked > 3) throw std::invalid_argument("marked index must be in 0..3");
}

// Phase flip of |marked>: CZ with X on every wire whose marked bit is 0.
inline std::vector<Gate> grover_oracle_gates(int marked) {
  check_marked(marked);
  std::vector<Gate> flips;
  if (((marked >> 1) & 1) == 0) flips.push_back(gate::X{SpinChannel::Nuclear});
  if ((marked & 1) == 0) flips.push_back(gate::X{SpinChannel::Electron});
  std::vector<Gate> c = flips;
  c.push_back(gate::CZ{});
  c.insert(c.end(), flips.begin(), flips.end());
  return c;
}

// H.H . (phase flip on |00>) . H.H
inline std::vector<Gate> grover_diffusion_gates() {
  const gate::H hn{SpinChannel::Nuclear}, he{SpinChannel::Electron};
  std::vector<Gate> c{hn, he};
  for (const auto& g : grover_oracle_gates(0)) c.push_back(g);
  c.push_back(hn);
  c.push_back(he);
  return c;
}

inline std::vector<Gate> grover_circuit(int marked, int iterations = 1) {
  check_marked(marked);
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  std::vector<Gate> c{gate::H{SpinChannel::Nuclear}, gate::H{SpinChannel::Electron}};
  for (int k = 0; k < iterations; ++k) {
    for (const auto& g : grover_oracle_gates(marked)) c.push_back(g);
    for (const auto& g : grover_diffusion_gates()) c.push_back(g);
  }
  return c;
}

struct GroverResult {
  int marked = 0;
  int iterations = 1;
  int top_outcome = 0;  // most frequent outcome in the counts
  AlgorithmRun run;
};

inline GroverResult grover(int marked, const RunSettings& s, int iterations = 1) {
  GroverResult r;
  r.marked = marked;
  r.iterations = iterations;
  r.run = run_circuit(grover_circuit(marked, iterations), s);
  const auto& counts = r.run.measurement.counts;
  for (int i = 1; i < 4; ++i)
    if (counts[i] > counts[r.top_outcome]) r.top_outcome = i;
  return r;
}

inline nlohmann::json to_json(const GroverResult& r) {
  nlohmann::json j = to_json(r.run);
  j["algorithm"] = "grover";
  j["marked"] = r.marked;
  j["iterations"] = r.iterations;
  j["top_outcome"] = r.top_outcome;
  return j;
}

}  // namespace hfqpu
