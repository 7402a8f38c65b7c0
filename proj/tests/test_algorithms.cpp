#include <catch_amalgamated.hpp>

#include <cmath>

#include "hfqpu/algorithms.hpp"
#include "test_support.hpp"

using namespace hfqpu;

namespace {

constexpr auto E = SpinChannel::Electron;
constexpr auto N = SpinChannel::Nuclear;

// Independent DJ: prepare |0>|1>, H both, apply U_f by its truth table, H on x.
std::array<double, 4> oracle_dj(DJOracle o) {
  testing::Amplitudes psi{0.0, 0.0, 0.0, 0.0};
  psi[0] = 1.0;
  testing::apply_x(psi, E);
  testing::apply_h(psi, N);
  testing::apply_h(psi, E);
  testing::Amplitudes out{};
  for (int i = 0; i < 4; ++i) {
    const int x = (i >> 1) & 1, y = i & 1;
    out[2 * x + (y ^ dj_truth(o, x))] += psi[i];
  }
  testing::apply_h(out, N);
  return testing::probs(out);
}

// Independent Grover: uniform state, sign flip of the marked amplitude,
// inversion about the mean.
std::array<double, 4> oracle_grover(int marked, int iterations) {
  testing::Amplitudes psi{0.5, 0.5, 0.5, 0.5};
  for (int k = 0; k < iterations; ++k) {
    psi[marked] = -psi[marked];
    Complex mean = 0.0;
    for (auto a : psi) mean += a / 4.0;
    for (auto& a : psi) a = 2.0 * mean - a;
  }
  return testing::probs(psi);
}

RunSettings physical() {
  RunSettings s;
  s.backend = Backend::Physical;
  return s;
}

}  // namespace

TEST_CASE("measurement examples", "[algorithms]") {
  const auto m = measure(basis_state(2), 100, 1);
  CHECK(m.counts == std::array<std::uint64_t, 4>{0, 0, 100, 0});
  CHECK(m.shots == 100);

  const StateVector4 uniform = StateVector4::Constant(0.5);
  const auto u = measure(uniform, 4096, 7);
  const double sigma = std::sqrt(4096 * 0.25 * 0.75);
  for (auto c : u.counts) CHECK(std::abs(static_cast<double>(c) - 1024.0) <= 4.0 * sigma);

  CHECK(measure(uniform, 500, 99).counts == measure(uniform, 500, 99).counts);
  CHECK(measure(uniform, 500, 99).counts != measure(uniform, 500, 100).counts);
  // shot k does not depend on how many shots follow it
  const auto small = measure(uniform, 10, 3), large = measure(uniform, 11, 3);
  std::uint64_t differ = 0;
  for (int i = 0; i < 4; ++i) differ += large.counts[i] - small.counts[i];
  CHECK(differ == 1);
}

TEST_CASE("measurement contract", "[algorithms]") {
  CHECK_THROWS_AS(measure(2.0 * basis_state(0), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(measure(basis_state(0), 0, 1), std::invalid_argument);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const double u = shot_uniform(5, s);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(outcome_label(2) == "10");
}

TEST_CASE("Deutsch-Jozsa oracles implement their truth tables", "[algorithms]") {
  for (auto o : {DJOracle::Const0, DJOracle::Const1, DJOracle::BalancedId, DJOracle::BalancedNot}) {
    Operator4 u = Operator4::Identity();
    for (const auto& g : dj_oracle_gates(o)) u = ideal_unitary(g) * u;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) CHECK(std::norm(u(2 * x + (y ^ dj_truth(o, x)), 2 * x + y)) == Catch::Approx(1.0));
    CHECK(parse_dj_oracle(to_string(o)) == o);
  }
  CHECK_THROWS_AS(parse_dj_oracle("random"), std::invalid_argument);
}

TEST_CASE("ideal Deutsch-Jozsa", "[algorithms]") {
  for (auto o : {DJOracle::Const0, DJOracle::Const1, DJOracle::BalancedId, DJOracle::BalancedNot}) {
    const auto r = deutsch_jozsa(o, {});
    const auto expected = oracle_dj(o);
    for (int i = 0; i < 4; ++i) CHECK(r.run.measurement.probabilities[i] == Catch::Approx(expected[i]).margin(1e-12));
    const bool constant = o == DJOracle::Const0 || o == DJOracle::Const1;
    CHECK(r.verdict == (constant ? DJVerdict::Constant : DJVerdict::Balanced));
    CHECK(r.query_one_probability == Catch::Approx(constant ? 0.0 : 1.0).margin(1e-10));
    CHECK_FALSE(r.run.fidelity_vs_ideal.has_value());
  }
}

TEST_CASE("ideal Grover", "[algorithms]") {
  for (int marked = 0; marked < 4; ++marked) {
    const auto r = grover(marked, {});
    CHECK(r.top_outcome == marked);
    CHECK(r.run.measurement.probabilities[marked] == Catch::Approx(1.0).margin(1e-10));
    for (int it : {0, 2, 3}) {
      const auto more = grover(marked, {}, it);
      const auto expected = oracle_grover(marked, it);
      for (int i = 0; i < 4; ++i)
        CHECK(more.run.measurement.probabilities[i] == Catch::Approx(expected[i]).margin(1e-12));
    }
  }
  CHECK_THROWS_AS(grover(4, {}), std::invalid_argument);
  CHECK_THROWS_AS(grover(-1, {}), std::invalid_argument);
}

TEST_CASE("algorithms on the physical backend", "[algorithms]") {
  const auto g = grover(2, physical());
  CHECK(g.run.measurement.probabilities[2] >= 0.95);
  CHECK(g.top_outcome == 2);
  REQUIRE(g.run.fidelity_vs_ideal.has_value());
  CHECK(*g.run.fidelity_vs_ideal >= 0.95);

  const auto d = deutsch_jozsa(DJOracle::BalancedNot, physical());
  CHECK(d.verdict == DJVerdict::Balanced);
  CHECK(d.query_one_probability >= 0.95);
  const auto expected = oracle_dj(DJOracle::BalancedNot);
  double tvd = 0.0;
  for (int i = 0; i < 4; ++i) tvd += 0.5 * std::abs(d.run.measurement.probabilities[i] - expected[i]);
  CHECK(tvd <= 0.05);
}

TEST_CASE("run JSON layout", "[algorithms]") {
  const auto j = to_json(grover(1, {}));
  CHECK(j.at("backend") == "ideal");
  CHECK(j.at("fidelity_vs_ideal").is_null());
  CHECK(j.at("counts").at("01") == 1024);
  CHECK(j.at("shots") == 1024);
  CHECK(j.at("seed") == 42);
  CHECK(j.at("top_outcome") == 1);
  CHECK(j.at("probabilities").size() == 4);
}
