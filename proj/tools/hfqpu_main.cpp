// hfqpu: command-line front end for the hyperfine two-qubit simulator.
//
//   hfqpu spectrum   [--config cfg.json]
//   hfqpu rabi       --channel electron --t-max 12.6 --points 200 --format csv
//   hfqpu gate cnot  --backend physical
//   hfqpu algo dj    --oracle balanced_not --shots 4096 --seed 7
//   hfqpu algo grover --marked 3

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hfqpu/cli.hpp"

namespace {

int emit(const hfqpu::cli::CommandOutput& result, const std::string& out_path) {
  if (result.exit_code != 0) {
    std::cerr << "hfqpu: " << result.error << "\n";
    return result.exit_code;
  }
  if (out_path.empty()) {
    std::cout << result.body;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "hfqpu: cannot write '" << out_path << "'\n";
    return 2;
  }
  out << result.body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hfqpu;
  CLI::App app{"Pulse-level simulator of a single-atom electron/nuclear spin quantum register"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", backend = "ideal";
  std::optional<double> dt;
  std::optional<std::uint64_t> seed, shots;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--backend", backend, "ideal or physical")->check(CLI::IsMember({"ideal", "physical"}));
  app.add_option("--seed", seed, "Measurement seed");
  app.add_option("--shots", shots, "Measurement shots");
  app.add_option("--dt", dt, "Integrator step, seconds");

  auto* spectrum = app.add_subcommand("spectrum", "Energy levels and ESR/NMR transition lines");

  auto* rabi = app.add_subcommand("rabi", "Population time series under continuous drive from |00>");
  cli::RabiArgs rabi_args;
  std::string rabi_channel = "electron";
  std::optional<double> carrier;
  rabi->add_option("--channel", rabi_channel, "electron or nuclear")
      ->check(CLI::IsMember({"electron", "nuclear"}));
  rabi->add_option("--carrier", carrier, "Drive angular frequency (default: line addressed from |00>)");
  rabi->add_option("--detuning", rabi_args.detuning, "Offset added to the carrier");
  rabi->add_option("--t-max", rabi_args.t_max, "End time, seconds");
  rabi->add_option("--points", rabi_args.points, "Number of samples including t = 0");

  auto* gate_cmd = app.add_subcommand("gate", "Compile and execute one gate");
  cli::GateArgs gate_args;
  std::string target = "electron", control = "nuclear";
  gate_cmd->add_option("gate", gate_args.spec, "rx(theta) ry(theta) rz(theta) h x z cz cnot")->required();
  gate_cmd->add_option("--target", target, "electron or nuclear")->check(CLI::IsMember({"electron", "nuclear"}));
  gate_cmd->add_option("--control", control, "electron or nuclear")->check(CLI::IsMember({"electron", "nuclear"}));

  auto* algo = app.add_subcommand("algo", "Run a two-qubit algorithm");
  algo->require_subcommand(1);
  auto* dj = algo->add_subcommand("dj", "Deutsch-Jozsa");
  std::string oracle = "balanced_id";
  dj->add_option("--oracle", oracle, "const0 const1 balanced_id balanced_not");
  auto* grover = algo->add_subcommand("grover", "Grover search");
  int marked = 3, iterations = 1;
  grover->add_option("--marked", marked, "Marked basis index 0..3");
  grover->add_option("--iterations", iterations, "Grover iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cli::RunConfig cfg;
  try {
    if (config_path.empty())
      if (const char* env = std::getenv(cli::kDefaultConfigEnv); env && *env) config_path = env;
    if (!config_path.empty()) cfg = cli::load_config_file(config_path);
    cfg.format = format == "csv" ? cli::OutputFormat::Csv : cli::OutputFormat::Json;
    cfg.backend = parse_backend(backend);
    if (dt) {
      if (!(*dt > 0.0)) throw cli::ConfigError("field 'dt' must be > 0");
      cfg.dt = dt;
    }
    if (seed) cfg.seed = *seed;
    if (shots) cfg.shots = *shots;
  } catch (const std::exception& e) {
    std::cerr << "hfqpu: " << e.what() << "\n";
    return 2;
  }
  cfg.out_path = out_path;

  if (spectrum->parsed()) return emit(cli::cmd_spectrum(cfg), out_path);
  if (rabi->parsed()) {
    rabi_args.channel = parse_channel(rabi_channel);
    rabi_args.carrier = carrier;
    return emit(cli::cmd_rabi(cfg, rabi_args), out_path);
  }
  if (gate_cmd->parsed()) {
    gate_args.target = parse_channel(target);
    gate_args.control = parse_channel(control);
    return emit(cli::cmd_gate(cfg, gate_args), out_path);
  }
  if (dj->parsed()) return emit(cli::cmd_algo_dj(cfg, oracle), out_path);
  if (grover->parsed()) return emit(cli::cmd_algo_grover(cfg, marked, iterations), out_path);
  return 2;
}
