#pragma once

// Pulse-sequence IR: resonant rectangular RF pulses, free-evolution delays and
// zero-duration frame (virtual Z) rotations.
//
// Angle convention: a rotation (theta G) is exp(-i*theta*G); 90 degrees is pi/2.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hfqpu/dynamics.hpp"
#include "hfqpu/hamiltonian.hpp"
#include "hfqpu/spin_core.hpp"

namespace hfqpu {

// Resonant rectangular pulse on one line (or on both lines of a channel when
// `condition` is empty). `phase` is the azimuth of the rotation axis in the
// rotating frame: 0 rotates about x, pi/2 about y. Rotation angle is
// rabi_rate * duration.
struct RfPulse {
  SpinChannel channel = SpinChannel::Electron;
  double carrier_omega = 0.0;
  double rabi_rate = 1.0;
  double phase = 0.0;
  double duration = 0.0;
  std::optional<SpinState> condition;  // spectator spin state selecting the line

  bool operator==(const RfPulse&) const = default;
};

// Free evolution. In the frame the simulator reports in, the coupling term
// survives and the delay generates exp(-i*a*duration*S_z*I_z).
struct Delay {
  double duration = 0.0;
  bool operator==(const Delay&) const = default;
};

enum class ZTarget { Electron, Nuclear, ZZ };

// Frame update exp(-i*angle*G) with G = S_z, I_z or 2*I_z*S_z.
struct VirtualZ {
  ZTarget target = ZTarget::Electron;
  double angle = 0.0;
  bool operator==(const VirtualZ&) const = default;
};

using PulseElement = std::variant<RfPulse, Delay, VirtualZ>;

struct PulseSequence {
  std::vector<PulseElement> elements;  // applied left to right in time
  double global_phase = 0.0;           // radians, multiplies the unitary by e^{i*global_phase}

  double physical_duration() const {
    double total = 0.0;
    for (const auto& e : elements) {
      if (const auto* p = std::get_if<RfPulse>(&e)) total += p->duration;
      else if (const auto* d = std::get_if<Delay>(&e)) total += d->duration;
    }
    return total;
  }

  // s1.then(s2): s1 first, then s2.
  PulseSequence& then(const PulseSequence& next) {
    elements.insert(elements.end(), next.elements.begin(), next.elements.end());
    global_phase += next.global_phase;
    return *this;
  }

  bool operator==(const PulseSequence&) const = default;
};

inline void validate(const PulseElement& e) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RfPulse>) {
          if (!(v.duration >= 0.0) || !std::isfinite(v.duration))
            throw std::invalid_argument("rf pulse duration must be finite and >= 0");
          if (!(v.rabi_rate > 0.0) || !std::isfinite(v.rabi_rate))
            throw std::invalid_argument("rf pulse rabi rate must be finite and > 0");
          if (!std::isfinite(v.phase) || !std::isfinite(v.carrier_omega))
            throw std::invalid_argument("rf pulse phase and carrier must be finite");
        } else if constexpr (std::is_same_v<T, Delay>) {
          if (!(v.duration >= 0.0) || !std::isfinite(v.duration))
            throw std::invalid_argument("delay duration must be finite and >= 0");
        } else {
          if (!std::isfinite(v.angle)) throw std::invalid_argument("virtual Z angle must be finite");
        }
      },
      e);
}

inline void validate(const PulseSequence& s) {
  for (const auto& e : s.elements) validate(e);
  if (!std::isfinite(s.global_phase)) throw std::invalid_argument("global phase must be finite");
}

// ---------------------------------------------------------------------------
// Ideal semantics
// ---------------------------------------------------------------------------

enum class Generator { Iz, Sz, ZZ, Ix, Iy, Sx, Sy };

inline Operator4 generator_operator(Generator g) {
  using enum Generator;
  switch (g) {
    case Iz: return spin_operator(SpinChannel::Nuclear, SpinAxis::Z);
    case Sz: return spin_operator(SpinChannel::Electron, SpinAxis::Z);
    case ZZ: return 2.0 * spin_operator(SpinChannel::Nuclear, SpinAxis::Z) *
                    spin_operator(SpinChannel::Electron, SpinAxis::Z);
    case Ix: return spin_operator(SpinChannel::Nuclear, SpinAxis::X);
    case Iy: return spin_operator(SpinChannel::Nuclear, SpinAxis::Y);
    case Sx: return spin_operator(SpinChannel::Electron, SpinAxis::X);
    case Sy: return spin_operator(SpinChannel::Electron, SpinAxis::Y);
  }
  throw std::logic_error("unreachable generator");
}

// exp(-i*theta*G)
inline Operator4 rotation_semantics(Generator g, double theta) {
  return expm_i_hermitian(generator_operator(g), theta);
}

inline Generator z_generator(ZTarget t) {
  switch (t) {
    case ZTarget::Electron: return Generator::Sz;
    case ZTarget::Nuclear: return Generator::Iz;
    case ZTarget::ZZ: return Generator::ZZ;
  }
  throw std::logic_error("unreachable z target");
}

// exp(-i*theta*(cos(phase) s_x + sin(phase) s_y)) on a single spin.
inline Matrix2c transverse_rotation(double theta, double phase) {
  const Matrix2c axis = std::cos(phase) * spin_half(SpinAxis::X) + std::sin(phase) * spin_half(SpinAxis::Y);
  // axis^2 = I/4, so the exponential is cos(theta/2) - 2i sin(theta/2) axis.
  return std::cos(theta / 2.0) * Matrix2c::Identity() - 2.0 * kI * std::sin(theta / 2.0) * axis;
}

inline Operator4 element_unitary(const PulseElement& e, const SystemParams& p) {
  return std::visit(
      [&](const auto& v) -> Operator4 {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RfPulse>) {
          const Matrix2c r = transverse_rotation(v.rabi_rate * v.duration, v.phase);
          return v.condition ? embed_conditional(v.channel, r, *v.condition) : embed(v.channel, r);
        } else if constexpr (std::is_same_v<T, Delay>) {
          return rotation_semantics(Generator::ZZ, p.a * v.duration / 2.0);
        } else {
          return rotation_semantics(z_generator(v.target), v.angle);
        }
      },
      e);
}

// (90 I_z)(90 S_z)(-90 2I_zS_z): CZ times e^{-i pi/4}.
inline PulseSequence paper_cz_sequence() {
  const double quarter = std::numbers::pi / 2.0;
  return PulseSequence{{VirtualZ{ZTarget::Nuclear, quarter}, VirtualZ{ZTarget::Electron, quarter},
                        VirtualZ{ZTarget::ZZ, -quarter}},
                       0.0};
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline std::string_view to_string(ZTarget t) {
  switch (t) {
    case ZTarget::Electron: return "electron";
    case ZTarget::Nuclear: return "nuclear";
    case ZTarget::ZZ: return "zz";
  }
  return "";
}

inline ZTarget parse_z_target(std::string_view s) {
  if (s == "electron") return ZTarget::Electron;
  if (s == "nuclear") return ZTarget::Nuclear;
  if (s == "zz") return ZTarget::ZZ;
  throw std::invalid_argument("unknown virtual Z target '" + std::string(s) + "'");
}

inline nlohmann::json to_json(const PulseElement& e) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RfPulse>) {
          nlohmann::json j = {{"type", "rf"},           {"channel", std::string(to_string(v.channel))},
                              {"carrier", v.carrier_omega}, {"rabi", v.rabi_rate},
                              {"phase", v.phase},       {"duration", v.duration}};
          if (v.condition) j["condition"] = std::string(to_string(*v.condition));
          return j;
        } else if constexpr (std::is_same_v<T, Delay>) {
          return {{"type", "delay"}, {"duration", v.duration}};
        } else {
          return {{"type", "vz"}, {"target", std::string(to_string(v.target))}, {"angle", v.angle}};
        }
      },
      e);
}

inline nlohmann::json to_json(const PulseSequence& s) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : s.elements) elements.push_back(to_json(e));
  return {{"elements", std::move(elements)}, {"global_phase", s.global_phase}};
}

inline PulseElement element_from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  PulseElement e;
  if (type == "rf") {
    RfPulse p;
    p.channel = parse_channel(j.at("channel").get<std::string>());
    p.carrier_omega = j.at("carrier").get<double>();
    p.rabi_rate = j.at("rabi").get<double>();
    p.phase = j.at("phase").get<double>();
    p.duration = j.at("duration").get<double>();
    if (j.contains("condition")) p.condition = parse_spin_state(j.at("condition").get<std::string>());
    e = p;
  } else if (type == "delay") {
    e = Delay{j.at("duration").get<double>()};
  } else if (type == "vz") {
    e = VirtualZ{parse_z_target(j.at("target").get<std::string>()), j.at("angle").get<double>()};
  } else {
    throw std::invalid_argument("unknown pulse element type '" + type + "'");
  }
  validate(e);
  return e;
}

inline PulseSequence sequence_from_json(const nlohmann::json& j) {
  PulseSequence s;
  for (const auto& e : j.at("elements")) s.elements.push_back(element_from_json(e));
  s.global_phase = j.value("global_phase", 0.0);
  validate(s);
  return s;
}

}  // namespace hfqpu
