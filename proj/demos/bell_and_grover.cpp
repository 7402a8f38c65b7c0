// Library walk-through: spectrum, a compiled Bell-state circuit on both
// backends, and a Grover search.

#include <cstdio>
#include <numbers>

#include "hfqpu/hfqpu.hpp"

int main() {
  using namespace hfqpu;
  const SystemParams p = default_demo_params();

  std::printf("levels:");
  for (double e : energy_levels(p)) std::printf(" %.1f", e);
  std::printf("\nlines:");
  for (const auto& t : transition_table(p))
    std::printf(" %s/%s=%.1f", std::string(to_string(t.channel)).c_str(), std::string(to_string(t.spectator)).c_str(),
                t.angular_frequency);
  std::printf("\n\n");

  // H on the nucleus, then CNOT nucleus -> electron: (|00> + |11>)/sqrt2
  const std::vector<Gate> bell{gate::H{SpinChannel::Nuclear}, gate::CNOT{}};
  const CompileResult compiled = compile_circuit(bell, p, {});
  std::printf("bell circuit: %zu pulse elements, %.3f s of pulses and delays\n", compiled.sequence.elements.size(),
              compiled.sequence.physical_duration());
  for (Backend b : {Backend::Ideal, Backend::Physical}) {
    const ExecutionResult r = execute(compiled.sequence, b, p, unit_drive_coupling());
    const auto probs = probabilities(r.unitary * basis_state(0));
    std::printf("  %-8s P = [%.4f %.4f %.4f %.4f]  steps = %lld\n", std::string(to_string(b)).c_str(), probs[0],
                probs[1], probs[2], probs[3], static_cast<long long>(r.steps));
  }

  RunSettings settings;
  settings.backend = Backend::Physical;
  const GroverResult g = grover(2, settings);
  std::printf("\ngrover(marked=10) on the physical backend: top outcome %s, counts",
              outcome_label(g.top_outcome).c_str());
  for (auto c : g.run.measurement.counts) std::printf(" %llu", static_cast<unsigned long long>(c));
  std::printf(", fidelity vs ideal %.4f\n", g.run.fidelity_vs_ideal.value_or(1.0));
}
