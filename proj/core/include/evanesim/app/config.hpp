#pragma once

// Run configuration: a JSON document (or the equivalent CLI flags) resolved
// into a fully defaulted RunConfig in SI units and radians.
//
//   {
//     "scenario": "ftir",
//     "params":   {"gap": "32.8mm", "angle": 45, "polarization": "TM"},
//     "sweep":    {"param": "gap", "start": 0, "stop": "3lambda", "steps": 64},
//     "pulse":    {"envelope": "gaussian", "fwhm": "5ns"},
//     "outputs":  ["timing", "gh"],
//     "format":   "csv",
//     "out":      "results"
//   }
//
// Bare angles are degrees; "lambda" lengths are multiples of the scenario's
// wavelength at its base frequency.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "evanesim/pulse.hpp"

namespace evanesim::app {

enum class ScenarioKind { Ftir, Waveguide, Lattice, Acoustic, Quantum };
enum class OutputKind { Scatter, Timing, Hartman, Gh, Pulse, Virtuality };
enum class Format { Csv, Json };

std::string_view to_string(ScenarioKind k);
std::string_view to_string(OutputKind k);
std::string_view to_string(Format f);

using ParamValue = std::variant<double, std::string>;

struct SweepAxis {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;

  double value(int index) const;
  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct RunConfig {
  ScenarioKind scenario = ScenarioKind::Ftir;
  std::map<std::string, ParamValue> params;
  std::optional<SweepAxis> sweep;
  std::optional<PulseSpec> pulse;
  std::vector<OutputKind> outputs;  // sorted, unique
  std::string output_path = "evanesim_out";
  Format format = Format::Csv;

  double number(const std::string& name) const;
  const std::string& choice(const std::string& name) const;
  bool wants(OutputKind k) const;
};

bool operator==(const RunConfig& a, const RunConfig& b);

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownKey, BadValue, OutOfRange };

  ConfigError(Kind kind, std::string key, std::string message, int line = 0, int column = 0);

  Kind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::string key_;
  int line_;
  int column_;
};

std::string_view to_string(ConfigError::Kind k);

/// Parses a configuration document. Syntax errors carry line/column.
RunConfig parse_config(std::string_view text);
RunConfig parse_config(const nlohmann::json& doc);
inline RunConfig parse_config(const char* text) { return parse_config(std::string_view(text)); }
inline RunConfig parse_config(const std::string& text) {
  return parse_config(std::string_view(text));
}

nlohmann::json to_json(const RunConfig& config);
std::string dump_config(const RunConfig& config);

/// Name of the parameter that sets the barrier length of a scenario.
std::string_view barrier_parameter(ScenarioKind k);

/// True for count parameters (periods, points); sweeps round them.
bool integer_parameter(ScenarioKind k, const std::string& name);

/// Unit label used in table headers for a parameter ("m", "Hz", "rad", "-").
std::string parameter_unit(ScenarioKind k, const std::string& name);

}  // namespace evanesim::app
