#pragma once

// Command implementations behind the hfqpu executable. Each command returns
// its report as text plus an exit code (0 ok, 2 config/usage error, 3
// numerical contract violation), so tests can drive them without a process.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hfqpu/algorithms.hpp"
#include "hfqpu/compiler.hpp"
#include "hfqpu/dynamics.hpp"
#include "hfqpu/execute.hpp"
#include "hfqpu/gates.hpp"
#include "hfqpu/hamiltonian.hpp"

namespace hfqpu::cli {

inline constexpr const char* kDefaultConfigEnv = "HFQPU_DEFAULT_CONFIG";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
  SystemParams system = default_demo_params();
  std::optional<PhysicalInput> physical;  // set when the config gave raw constants
  PhysicalInput coupling = unit_drive_coupling();
  DriveBudget drive{};
  std::optional<double> dt;
  Backend backend = Backend::Ideal;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;  // empty: stdout
  std::uint64_t seed = 42;
  std::uint64_t shots = 1024;
};

struct CommandOutput {
  int exit_code = 0;
  std::string body;
  std::string error;
};

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::string& where,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown field '" + where + key + "'");
  }
}

inline double number_field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing field '" + where + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + where + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("field '" + where + key + "' must be finite");
  return x;
}

inline const nlohmann::json& object_field(const nlohmann::json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_object()) throw ConfigError("field '" + key + "' must be an object");
  return v;
}

}  // namespace detail

// Schema:
// {"system":{"omega_e":..,"omega_n":..,"a":..}                     (frequency units)
//  | "physical":{"g":..,"beta_over_hbar":..,"B0":..,"gamma_n":..,
//                "gamma_e":.. (optional, default g*beta_over_hbar),"A_over_hbar":..},
//  "drive":{"rabi_e":..,"rabi_n":..}, "integrator":{"dt":..}}
inline RunConfig parse_config(const nlohmann::json& j) {
  using detail::number_field;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  detail::reject_unknown(j, "", {"system", "physical", "drive", "integrator"});
  RunConfig cfg;
  const bool has_system = j.contains("system");
  const bool has_physical = j.contains("physical");
  if (has_system && has_physical) throw ConfigError("field 'physical': give either 'system' or 'physical', not both");
  if (has_system) {
    const auto& s = detail::object_field(j, "system");
    detail::reject_unknown(s, "system.", {"omega_e", "omega_n", "a"});
    cfg.system = {number_field(s, "omega_e", "system."), number_field(s, "omega_n", "system."),
                  number_field(s, "a", "system.")};
  } else if (has_physical) {
    const auto& s = detail::object_field(j, "physical");
    detail::reject_unknown(s, "physical.", {"g", "beta_over_hbar", "B0", "gamma_n", "gamma_e", "A_over_hbar"});
    PhysicalInput in;
    in.g_factor = number_field(s, "g", "physical.");
    in.bohr_magneton_over_hbar = number_field(s, "beta_over_hbar", "physical.");
    in.field_B = number_field(s, "B0", "physical.");
    in.gamma_n = number_field(s, "gamma_n", "physical.");
    in.hyperfine_A_over_hbar = number_field(s, "A_over_hbar", "physical.");
    in = with_default_gamma_e(in);
    if (s.contains("gamma_e")) in.gamma_e = number_field(s, "gamma_e", "physical.");
    if (in.field_B < 0.0) throw ConfigError("field 'physical.B0' must be >= 0");
    cfg.physical = in;
    cfg.coupling = in;
    cfg.system = to_system_params(in);
  }
  if (j.contains("drive")) {
    const auto& d = detail::object_field(j, "drive");
    detail::reject_unknown(d, "drive.", {"rabi_e", "rabi_n"});
    if (d.contains("rabi_e")) cfg.drive.electron = number_field(d, "rabi_e", "drive.");
    if (d.contains("rabi_n")) cfg.drive.nuclear = number_field(d, "rabi_n", "drive.");
    if (cfg.drive.electron < 0.0) throw ConfigError("field 'drive.rabi_e' must be >= 0");
    if (cfg.drive.nuclear < 0.0) throw ConfigError("field 'drive.rabi_n' must be >= 0");
  }
  if (j.contains("integrator")) {
    const auto& in = detail::object_field(j, "integrator");
    detail::reject_unknown(in, "integrator.", {"dt"});
    if (in.contains("dt")) {
      const double dt = number_field(in, "dt", "integrator.");
      if (!(dt > 0.0)) throw ConfigError("field 'integrator.dt' must be > 0");
      cfg.dt = dt;
    }
  }
  return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

inline nlohmann::json system_json(const SystemParams& p) {
  return {{"omega_e", p.omega_e}, {"omega_n", p.omega_n}, {"a", p.a}};
}

// 17 significant digits, '.' decimal point regardless of locale.
inline std::string format_real(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

inline nlohmann::json operator_json(const Operator4& u) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row_re = nlohmann::json::array(), row_im = nlohmann::json::array();
    for (int k = 0; k < 4; ++k) {
      row_re.push_back(u(i, k).real());
      row_im.push_back(u(i, k).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  return {{"re", re}, {"im", im}};
}

// ---------------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------------

// Accepts "1.5", "pi", "-pi/2", "3*pi/4", "0.5pi".
inline double parse_angle(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty()) throw std::invalid_argument("empty angle");
  const auto parse_number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad angle '" + std::string(text) + "'");
    }
    if (used != part.size()) throw std::invalid_argument("bad angle '" + std::string(text) + "'");
    return v;
  };
  double sign = 1.0;
  if (s.front() == '-' || s.front() == '+') {
    if (s.front() == '-') sign = -1.0;
    s.erase(0, 1);
  }
  std::string numerator = s, denominator;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    numerator = s.substr(0, slash);
    denominator = s.substr(slash + 1);
  }
  double value = 0.0;
  if (const auto at = numerator.find("pi"); at != std::string::npos) {
    if (at + 2 != numerator.size()) throw std::invalid_argument("bad angle '" + std::string(text) + "'");
    std::string coeff = numerator.substr(0, at);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    value = (coeff.empty() ? 1.0 : parse_number(coeff)) * std::numbers::pi;
  } else {
    value = parse_number(numerator);
  }
  if (!denominator.empty()) {
    const double d = parse_number(denominator);
    if (d == 0.0) throw std::invalid_argument("angle denominator is zero");
    value /= d;
  }
  return sign * value;
}

struct GateArgs {
  std::string spec;  // "cnot", "h", "rx(pi/2)", ...
  SpinChannel target = SpinChannel::Electron;
  SpinChannel control = SpinChannel::Nuclear;
};

inline Gate parse_gate(const GateArgs& args) {
  std::string name;
  std::optional<double> angle;
  const std::string& s = args.spec;
  if (const auto open = s.find('('); open != std::string::npos) {
    if (s.back() != ')') throw std::invalid_argument("bad gate '" + s + "'");
    name = s.substr(0, open);
    angle = parse_angle(s.substr(open + 1, s.size() - open - 2));
  } else {
    name = s;
  }
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto need_angle = [&] {
    if (!angle) throw std::invalid_argument("gate '" + name + "' needs an angle, e.g. " + name + "(pi/2)");
    return *angle;
  };
  if (angle && !(name == "rx" || name == "ry" || name == "rz"))
    throw std::invalid_argument("gate '" + name + "' takes no angle");
  Gate g;
  if (name == "rx") g = gate::RX{args.target, need_angle()};
  else if (name == "ry") g = gate::RY{args.target, need_angle()};
  else if (name == "rz") g = gate::RZ{args.target, need_angle()};
  else if (name == "h") g = gate::H{args.target};
  else if (name == "x") g = gate::X{args.target};
  else if (name == "z") g = gate::Z{args.target};
  else if (name == "cz") g = gate::CZ{};
  else if (name == "cnot" || name == "cx") g = gate::CNOT{args.control, args.target};
  else throw std::invalid_argument("unsupported gate '" + name + "'");
  validate(g);
  return g;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

// Runs `body`, mapping exceptions to exit codes.
inline CommandOutput guarded(const std::function<std::string()>& body) {
  CommandOutput out;
  try {
    out.body = body();
  } catch (const ContractViolation& e) {
    out.exit_code = 3;
    out.error = e.what();
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.error = e.what();
  } catch (const std::invalid_argument& e) {
    out.exit_code = 2;
    out.error = e.what();
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = 2;
    out.error = e.what();
  }
  return out;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void require_json(const RunConfig& cfg, std::string_view command) {
  if (cfg.format != OutputFormat::Json)
    throw ConfigError("field 'format': " + std::string(command) + " only writes json");
}

inline CommandOutput cmd_spectrum(const RunConfig& cfg) {
  return guarded([&] {
    require_json(cfg, "spectrum");
    const SystemParams& p = cfg.system;
    nlohmann::json transitions = nlohmann::json::array();
    for (const auto& t : transition_table(p)) {
      transitions.push_back({{"from", t.from_index},
                             {"to", t.to_index},
                             {"channel", std::string(to_string(t.channel))},
                             {"spectator", std::string(to_string(t.spectator))},
                             {"angular_frequency", t.angular_frequency}});
    }
    nlohmann::json j = {{"system", system_json(p)},
                        {"levels", energy_levels(p)},
                        {"transitions", transitions},
                        {"paper_regime_ok", p.paper_regime_ok()}};
    if (!p.paper_regime_ok())
      j["warnings"] = {"|omega_e| < 10|a|: the secular hyperfine approximation is not well justified"};
    return dump(j);
  });
}

struct RabiArgs {
  SpinChannel channel = SpinChannel::Electron;
  std::optional<double> carrier;  // default: line seen from |00>
  double detuning = 0.0;          // added to the carrier
  double t_max = 2.0 * std::numbers::pi;
  int points = 101;
};

struct RabiSeries {
  double carrier = 0.0;
  double rabi = 0.0;
  std::vector<double> t;
  std::vector<std::array<double, 4>> populations;
};

// Continuous drive from |00> in the lab frame; populations sampled on an even grid.
inline RabiSeries simulate_rabi(const RunConfig& cfg, const RabiArgs& args) {
  if (!(args.t_max > 0.0) || !std::isfinite(args.t_max)) throw ConfigError("field 't_max' must be > 0");
  if (args.points < 2) throw ConfigError("field 'points' must be >= 2");
  const SystemParams& p = cfg.system;
  RabiSeries series;
  series.rabi = cfg.drive.for_channel(args.channel);
  series.carrier = args.carrier.value_or(transition_for(p, args.channel, SpinState::Up).angular_frequency) +
                   args.detuning;
  const double gamma = args.channel == SpinChannel::Electron ? cfg.coupling.gamma_e : cfg.coupling.gamma_n;
  DriveParams drive;
  drive.frequency_omega = series.carrier;
  drive.duration = args.t_max;
  if (series.rabi > 0.0) {
    if (gamma == 0.0) throw ConfigError("field 'drive': no coupling to drive this channel");
    drive.amplitude_Hx = 2.0 * series.rabi / std::abs(gamma);
  }
  const double dt = cfg.dt.value_or(default_time_step(std::max(max_bohr_frequency(p), std::abs(series.carrier))));
  const Operator4 h0 = static_hamiltonian(p);
  const auto hamiltonian = [&](double t) -> Operator4 { return h0 + drive_hamiltonian(cfg.coupling, drive, t); };
  StateVector4 psi = basis_state(0);
  const double spacing = args.t_max / static_cast<double>(args.points - 1);
  for (int k = 0; k < args.points; ++k) {
    const double t = spacing * k;
    if (k > 0) psi = propagate(hamiltonian, {spacing * (k - 1), t, dt, Integrator::Midpoint}) * psi;
    series.t.push_back(t);
    series.populations.push_back(probabilities(psi));
  }
  return series;
}

inline CommandOutput cmd_rabi(const RunConfig& cfg, const RabiArgs& args) {
  return guarded([&] {
    const RabiSeries s = simulate_rabi(cfg, args);
    if (cfg.format == OutputFormat::Csv) {
      std::string out = "t,P_00,P_01,P_10,P_11\n";
      for (std::size_t k = 0; k < s.t.size(); ++k) {
        out += format_real(s.t[k]);
        for (double pk : s.populations[k]) out += "," + format_real(pk);
        out += "\n";
      }
      return out;
    }
    nlohmann::json pops = nlohmann::json::object();
    for (int i = 0; i < 4; ++i) {
      nlohmann::json col = nlohmann::json::array();
      for (const auto& row : s.populations) col.push_back(row[i]);
      pops["P_" + outcome_label(i)] = col;
    }
    return dump({{"channel", std::string(to_string(args.channel))},
                 {"carrier", s.carrier},
                 {"rabi", s.rabi},
                 {"t", s.t},
                 {"populations", pops}});
  });
}

inline CommandOutput cmd_gate(const RunConfig& cfg, const GateArgs& args) {
  return guarded([&] {
    require_json(cfg, "gate");
    const Gate g = parse_gate(args);
    const CompileResult compiled = compile_gate(g, cfg.system, cfg.drive);
    const ExecutionResult exec = execute(compiled.sequence, cfg.backend, cfg.system, cfg.coupling, cfg.dt);
    std::vector<std::string> warnings = compiled.warnings;
    warnings.insert(warnings.end(), exec.warnings.begin(), exec.warnings.end());
    nlohmann::json j = {{"gate", describe(g)},
                        {"backend", std::string(to_string(cfg.backend))},
                        {"fidelity", process_fidelity(exec.unitary, ideal_unitary(g))},
                        {"duration", compiled.sequence.physical_duration()},
                        {"unitary", operator_json(exec.unitary)},
                        {"sequence", to_json(compiled.sequence)},
                        {"steps", exec.steps}};
    if (!warnings.empty()) j["warnings"] = warnings;
    return dump(j);
  });
}

inline RunSettings run_settings(const RunConfig& cfg) {
  RunSettings s;
  s.system = cfg.system;
  s.coupling = cfg.coupling;
  s.drive = cfg.drive;
  s.backend = cfg.backend;
  s.dt = cfg.dt;
  s.shots = cfg.shots;
  s.seed = cfg.seed;
  if (s.shots < 1) throw ConfigError("field 'shots' must be >= 1");
  return s;
}

inline std::string algo_csv(const AlgorithmRun& run) {
  std::string out = "outcome,probability,count\n";
  for (int i = 0; i < 4; ++i)
    out += outcome_label(i) + "," + format_real(run.measurement.probabilities[i]) + "," +
           std::to_string(run.measurement.counts[i]) + "\n";
  return out;
}

inline CommandOutput cmd_algo_dj(const RunConfig& cfg, const std::string& oracle) {
  return guarded([&] {
    const DJResult r = deutsch_jozsa(parse_dj_oracle(oracle), run_settings(cfg));
    return cfg.format == OutputFormat::Csv ? algo_csv(r.run) : dump(to_json(r));
  });
}

inline CommandOutput cmd_algo_grover(const RunConfig& cfg, int marked, int iterations = 1) {
  return guarded([&] {
    if (marked < 0 || marked > 3) throw ConfigError("field 'marked' must be in 0..3, got " + std::to_string(marked));
    if (iterations < 0) throw ConfigError("field 'iterations' must be >= 0");
    const GroverResult r = grover(marked, run_settings(cfg), iterations);
    return cfg.format == OutputFormat::Csv ? algo_csv(r.run) : dump(to_json(r));
  });
}

}  // namespace hfqpu::cli
