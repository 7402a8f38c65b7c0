#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hfqpu/cli.hpp"

using namespace hfqpu;
using namespace hfqpu::cli;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path tmp_dir() {
  std::filesystem::path d = HFQPU_TEST_TMP;
  std::filesystem::create_directories(d);
  return d;
}

// Runs the built executable; stdout goes to `out`.
int run_cli(const std::string& args, const std::filesystem::path& out, const std::string& env = "") {
  const std::string cmd = env + " \"" + std::string(HFQPU_CLI_PATH) + "\" " + args + " > \"" + out.string() +
                          "\" 2> \"" + out.string() + ".err\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing", "[cli]") {
  const RunConfig d = parse_config(json::object());
  CHECK(d.system == default_demo_params());

  const RunConfig c = parse_config(json::parse(R"({"system":{"omega_e":200,"omega_n":3,"a":-8},
      "drive":{"rabi_e":0.5},"integrator":{"dt":1e-3}})"));
  CHECK(c.system == SystemParams{200, 3, -8});
  CHECK(c.drive.electron == 0.5);
  CHECK(c.drive.nuclear == 1.0);
  CHECK(c.dt == 1e-3);

  const RunConfig phys = parse_config(json::parse(
      R"({"physical":{"g":2,"beta_over_hbar":3,"B0":5,"gamma_n":7,"A_over_hbar":11}})"));
  CHECK(phys.system == SystemParams{30, 35, 11});
  CHECK(phys.coupling.gamma_e == 6.0);

  const auto fails_naming = [](const char* text, const char* field) {
    CHECK_THROWS_WITH(parse_config(json::parse(text)), Catch::Matchers::ContainsSubstring(field));
  };
  fails_naming(R"({"system":{"omega_e":"fast","omega_n":1,"a":1}})", "system.omega_e");
  fails_naming(R"({"system":{"omega_e":1,"a":1}})", "system.omega_n");
  fails_naming(R"({"system":{"omega_e":1,"omega_n":1,"a":1,"b":2}})", "system.b");
  fails_naming(R"({"sytem":{}})", "sytem");
  fails_naming(R"({"integrator":{"dt":0}})", "integrator.dt");
  fails_naming(R"({"drive":{"rabi_n":-1}})", "drive.rabi_n");
  fails_naming(R"({"physical":{"g":2,"beta_over_hbar":3,"B0":-5,"gamma_n":7,"A_over_hbar":11}})", "physical.B0");
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
}

TEST_CASE("angle and gate parsing", "[cli]") {
  CHECK(parse_angle("pi") == kPi);
  CHECK(parse_angle("-pi/2") == -kPi / 2);
  CHECK(parse_angle("3*pi/4") == 3 * kPi / 4);
  CHECK(parse_angle("0.5pi") == 0.5 * kPi);
  CHECK(parse_angle("1.25") == 1.25);
  CHECK(parse_angle(" 2 / 4 ") == 0.5);
  for (const char* bad : {"", "pie", "pi/0", "abc", "1..2"}) CHECK_THROWS_AS(parse_angle(bad), std::invalid_argument);

  CHECK(std::holds_alternative<gate::CNOT>(parse_gate({"cx"})));
  const Gate g = parse_gate({"RY(-pi/2)", SpinChannel::Nuclear});
  REQUIRE(std::holds_alternative<gate::RY>(g));
  CHECK(std::get<gate::RY>(g).angle == -kPi / 2);
  CHECK(std::get<gate::RY>(g).target == SpinChannel::Nuclear);
  CHECK_THROWS_AS(parse_gate({"rx"}), std::invalid_argument);
  CHECK_THROWS_AS(parse_gate({"h(pi)"}), std::invalid_argument);
  CHECK_THROWS_AS(parse_gate({"swap"}), std::invalid_argument);
  CHECK_THROWS_AS(parse_gate({"cnot", SpinChannel::Electron, SpinChannel::Electron}), std::invalid_argument);
}

TEST_CASE("spectrum command", "[cli]") {
  const auto out = cmd_spectrum(RunConfig{});
  REQUIRE(out.exit_code == 0);
  const json j = json::parse(out.body);
  CHECK(j.at("levels") == json::array({507.5, -517.5, 492.5, -482.5}));
  CHECK(j.at("paper_regime_ok") == true);
  CHECK_FALSE(j.contains("warnings"));

  std::vector<double> lines;
  for (const auto& t : j.at("transitions")) lines.push_back(t.at("angular_frequency"));
  std::sort(lines.begin(), lines.end());
  CHECK(lines == std::vector<double>{15, 35, 975, 1025});

  RunConfig flat;
  flat.system.a = 0.0;
  const json jf = json::parse(cmd_spectrum(flat).body);
  CHECK(jf.at("transitions")[0].at("angular_frequency") == jf.at("transitions")[1].at("angular_frequency"));

  RunConfig neg;
  neg.system.a = -50.0;
  std::vector<double> neg_lines;
  const json jn = json::parse(cmd_spectrum(neg).body);
  for (const auto& t : jn.at("transitions"))
    neg_lines.push_back(t.at("angular_frequency"));
  std::sort(neg_lines.begin(), neg_lines.end());
  CHECK(neg_lines == lines);

  RunConfig strong;
  strong.system.a = 500.0;
  CHECK(json::parse(cmd_spectrum(strong).body).contains("warnings"));

  RunConfig csv;
  csv.format = OutputFormat::Csv;
  CHECK(cmd_spectrum(csv).exit_code == 2);
}

TEST_CASE("rabi command", "[cli]") {
  RunConfig cfg;
  RabiArgs args;
  args.t_max = kPi;
  args.points = 3;
  const RabiSeries resonant = simulate_rabi(cfg, args);
  CHECK(resonant.carrier == 1025.0);
  CHECK(resonant.populations.back()[1] >= 0.99);
  CHECK(resonant.populations.front()[0] == 1.0);

  RunConfig idle;
  idle.drive.electron = 0.0;
  for (const auto& row : simulate_rabi(idle, args).populations) CHECK(row[0] == Catch::Approx(1.0).margin(1e-12));

  args.detuning = 50.0;
  args.t_max = 20.0;
  args.points = 201;
  for (const auto& row : simulate_rabi(cfg, args).populations) CHECK(row[1] <= 0.01);

  cfg.format = OutputFormat::Csv;
  args.points = 2;
  const auto out = cmd_rabi(cfg, args);
  REQUIRE(out.exit_code == 0);
  CHECK(out.body.rfind("t,P_00,P_01,P_10,P_11\n", 0) == 0);
  CHECK(std::count(out.body.begin(), out.body.end(), '\n') == 3);
  args.points = 1;
  CHECK(cmd_rabi(cfg, args).exit_code == 2);
}

TEST_CASE("gate command", "[cli]") {
  RunConfig cfg;
  const json cz = json::parse(cmd_gate(cfg, {"cz"}).body);
  CHECK(cz.at("fidelity").get<double>() == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(cz.at("sequence").at("elements").size() == 3);
  CHECK(cz.at("steps") == 0);
  const auto bad = cmd_gate(cfg, {"rx(q)"});
  CHECK(bad.exit_code == 2);
  CHECK_FALSE(bad.error.empty());
  RunConfig flat;
  flat.system.a = 0.0;
  CHECK(cmd_gate(flat, {"cz"}).exit_code == 2);
}

TEST_CASE("algo commands", "[cli]") {
  RunConfig cfg;
  const json g = json::parse(cmd_algo_grover(cfg, 3).body);
  const auto probs = g.at("probabilities").get<std::vector<double>>();
  for (int i = 0; i < 4; ++i) CHECK(probs[i] == Catch::Approx(i == 3 ? 1.0 : 0.0).margin(1e-10));
  CHECK(json::parse(cmd_algo_dj(cfg, "const1").body).at("verdict") == "Constant");
  CHECK(json::parse(cmd_algo_dj(cfg, "balanced_id").body).at("verdict") == "Balanced");
  CHECK(cmd_algo_grover(cfg, 5).exit_code == 2);
  CHECK(cmd_algo_dj(cfg, "coin").exit_code == 2);
  cfg.shots = 0;
  CHECK(cmd_algo_grover(cfg, 1).exit_code == 2);
  cfg.shots = 10;
  cfg.format = OutputFormat::Csv;
  const std::string csv = cmd_algo_grover(cfg, 1).body;
  CHECK(csv.rfind("outcome,probability,count\n00,", 0) == 0);
  CHECK(csv.find("\n01,1,10\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("executable output is reproducible", "[cli][process]") {
  const auto dir = tmp_dir();
  const auto a = dir / "grover_a.json", b = dir / "grover_b.json";
  REQUIRE(run_cli("algo grover --marked 2 --backend physical --seed 9", a) == 0);
  REQUIRE(run_cli("algo grover --marked 2 --backend physical --seed 9", b) == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(json::parse(read_file(a)).at("top_outcome") == 2);

  const auto r1 = dir / "rabi_a.csv", r2 = dir / "rabi_b.csv";
  REQUIRE(run_cli("rabi --format csv --points 20 --t-max 3", r1) == 0);
  REQUIRE(run_cli("rabi --format csv --points 20 --t-max 3", r2) == 0);
  CHECK(read_file(r1) == read_file(r2));
}

TEST_CASE("executable exit codes and config sources", "[cli][process]") {
  const auto dir = tmp_dir();
  const auto out = dir / "out.txt";
  CHECK(run_cli("algo grover --marked 5", out) == 2);
  CHECK(run_cli("frobnicate", out) == 2);
  CHECK(run_cli("spectrum --config /nonexistent/cfg.json", out) == 2);

  const auto cfg = dir / "small.json";
  std::ofstream(cfg) << R"({"system":{"omega_e":100,"omega_n":1,"a":4}})";
  REQUIRE(run_cli("spectrum", out, std::string(kDefaultConfigEnv) + "=\"" + cfg.string() + "\"") == 0);
  CHECK(json::parse(read_file(out)).at("levels") == json::array({50.5, -51.5, 49.5, -48.5}));

  const auto file_out = dir / "written.json";
  std::filesystem::remove(file_out);
  REQUIRE(run_cli("spectrum --out \"" + file_out.string() + "\"", out) == 0);
  CHECK(read_file(out).empty());
  CHECK(json::parse(read_file(file_out)).at("levels").size() == 4);
}
