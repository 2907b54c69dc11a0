#include "evanesim/app/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "evanesim/app/units.hpp"
#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"

namespace evanesim::app {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ParamDef {
  std::string_view name;
  Dimension dim;
  std::string_view fallback;  // "auto" is resolved from other parameters
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool hi_open = false;
  std::vector<std::string_view> choices = {};

  bool is_choice() const { return !choices.empty(); }
  bool primary() const { return dim == Dimension::Frequency || dim == Dimension::Speed; }
};

const std::vector<ParamDef>& schema(ScenarioKind kind) {
  static const ParamDef points{"points", Dimension::Count, "201", 3, 1e6};
  static const ParamDef span{"span", Dimension::Dimensionless, "0.25", 0, 1, true, true};
  static const std::vector<ParamDef> ftir{
      {"n", Dimension::Dimensionless, "1.6", 0, kInf, true},
      {"angle", Dimension::Angle, "45deg", 0, kPi / 2, false, true},
      {"polarization", Dimension::Dimensionless, "TM", 0, 0, false, false, {"TE", "TM"}},
      {"frequency", Dimension::Frequency, "9.15GHz", 0, kInf, true},
      {"gap", Dimension::Length, "1lambda", 0, kInf},
      {"gh_mode", Dimension::Dimensionless, "single", 0, 0, false, false, {"single", "finite"}},
      {"lock", Dimension::Dimensionless, "kx", 0, 0, false, false, {"kx", "angle"}},
      points,
      span,
  };
  static const std::vector<ParamDef> waveguide{
      {"wide", Dimension::Length, "30mm", 0, kInf, true},
      {"narrow", Dimension::Length, "10mm", 0, kInf, true},
      {"length", Dimension::Length, "20mm", 0, kInf},
      {"frequency", Dimension::Frequency, "9.15GHz", 0, kInf, true},
      points,
      span,
  };
  static const std::vector<ParamDef> lattice{
      {"n_high", Dimension::Dimensionless, "1.6", 0, kInf, true},
      {"n_low", Dimension::Dimensionless, "1.0", 0, kInf, true},
      {"d_high", Dimension::Length, "auto", 0, kInf, true},
      {"d_low", Dimension::Length, "auto", 0, kInf, true},
      {"periods", Dimension::Count, "8", 1, 100000},
      {"frequency", Dimension::Frequency, "9.15GHz", 0, kInf, true},
      points,
      span,
  };
  static const std::vector<ParamDef> acoustic{
      {"frequency", Dimension::Frequency, "1kHz", 0, kInf, true},
      {"design_frequency", Dimension::Frequency, "auto", 0, kInf, true},
      {"sound_speed", Dimension::Speed, "343", 0, kInf, true},
      {"impedance", Dimension::Impedance, "413", 0, kInf, true},
      {"ratio", Dimension::Dimensionless, "4", 0, kInf, true},
      {"periods", Dimension::Count, "8", 1, 100000},
      points,
      span,
  };
  static const std::vector<ParamDef> quantum{
      {"energy", Dimension::Natural, "0.5", 0, kInf, true},
      {"height", Dimension::Natural, "1.0", 0, kInf},
      {"length", Dimension::Natural, "6.0", 0, kInf},
      {"mass", Dimension::Natural, "1.0", 0, kInf, true},
      points,
      span,
  };
  switch (kind) {
    case ScenarioKind::Ftir: return ftir;
    case ScenarioKind::Waveguide: return waveguide;
    case ScenarioKind::Lattice: return lattice;
    case ScenarioKind::Acoustic: return acoustic;
    case ScenarioKind::Quantum: return quantum;
  }
  return ftir;
}

const ParamDef* find_param(ScenarioKind kind, std::string_view name) {
  for (const auto& def : schema(kind)) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

[[noreturn]] void fail(ConfigError::Kind kind, const std::string& key, const std::string& msg) {
  throw ConfigError(kind, key, msg);
}

std::string scalar_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_number(v.get<double>());
  fail(ConfigError::Kind::BadValue, key, "expected a number or a string");
}

bool in_range(const ParamDef& def, double v) {
  const bool lo_ok = def.lo_open ? v > def.lo : v >= def.lo;
  const bool hi_ok = def.hi_open ? v < def.hi : v <= def.hi;
  return lo_ok && hi_ok;
}

double parse_numeric(const ParamDef& def, const std::string& text, const std::string& key,
                     std::optional<double> wavelength) {
  const auto q = split_quantity(text);
  if (!q) fail(ConfigError::Kind::BadValue, key, "'" + text + "' is not a number");
  const auto scale = unit_scale(def.dim, q->unit, wavelength);
  if (!scale) fail(ConfigError::Kind::BadValue, key, "unit '" + q->unit + "' not accepted here");
  const double value = q->number * *scale;
  if (def.dim == Dimension::Count && value != std::floor(value)) {
    fail(ConfigError::Kind::BadValue, key, "expected an integer");
  }
  if (!in_range(def, value)) {
    fail(ConfigError::Kind::OutOfRange, key, "value " + text + " is out of range");
  }
  return value;
}

std::string parse_choice(const ParamDef& def, const json& v, const std::string& key) {
  if (!v.is_string()) fail(ConfigError::Kind::BadValue, key, "expected one of the named choices");
  auto s = v.get<std::string>();
  for (auto c : def.choices) {
    std::string lower_c(c), lower_s(s);
    std::transform(lower_c.begin(), lower_c.end(), lower_c.begin(), ::tolower);
    std::transform(lower_s.begin(), lower_s.end(), lower_s.begin(), ::tolower);
    if (lower_c == lower_s) return std::string(c);
  }
  fail(ConfigError::Kind::BadValue, key, "'" + s + "' is not a valid choice");
}

template <typename Enum, std::size_t N>
Enum parse_enum(const json& v, const std::string& key, const std::array<Enum, N>& values) {
  if (!v.is_string()) fail(ConfigError::Kind::BadValue, key, "expected a string");
  const auto s = v.get<std::string>();
  for (auto e : values) {
    if (to_string(e) == s) return e;
  }
  fail(ConfigError::Kind::BadValue, key, "'" + s + "' is not recognised");
}

constexpr std::array kScenarios{ScenarioKind::Ftir, ScenarioKind::Waveguide, ScenarioKind::Lattice,
                                ScenarioKind::Acoustic, ScenarioKind::Quantum};
constexpr std::array kOutputs{OutputKind::Scatter, OutputKind::Timing, OutputKind::Hartman,
                              OutputKind::Gh,      OutputKind::Pulse,  OutputKind::Virtuality};
constexpr std::array kFormats{Format::Csv, Format::Json};
constexpr std::array kEnvelopes{Envelope::Gaussian, Envelope::RaisedCosine};

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(sep, start);
    auto piece = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    piece.erase(0, piece.find_first_not_of(' '));
    piece.erase(piece.find_last_not_of(' ') + 1);
    out.push_back(piece);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(ConfigError::Kind::UnknownKey, prefix + key, "unknown key '" + key + "'");
    }
  }
}

double wavelength_of(ScenarioKind kind, const std::map<std::string, ParamValue>& p) {
  auto num = [&](const char* n) { return std::get<double>(p.at(n)); };
  switch (kind) {
    case ScenarioKind::Acoustic: return num("sound_speed") / num("frequency");
    case ScenarioKind::Quantum: return 2.0 * kPi / std::sqrt(2.0 * num("mass") * num("energy"));
    default: return kSpeedOfLight / num("frequency");
  }
}

void resolve_auto(ScenarioKind kind, std::map<std::string, ParamValue>& p,
                  const std::set<std::string>& given) {
  if (kind == ScenarioKind::Lattice) {
    const double lambda0 = kSpeedOfLight / std::get<double>(p.at("frequency"));
    if (!given.contains("d_high")) p["d_high"] = lambda0 / (4.0 * std::get<double>(p.at("n_high")));
    if (!given.contains("d_low")) p["d_low"] = lambda0 / (4.0 * std::get<double>(p.at("n_low")));
  }
  if (kind == ScenarioKind::Acoustic && !given.contains("design_frequency")) {
    p["design_frequency"] = p.at("frequency");
  }
}

double center_frequency(const RunConfig& c) {
  if (c.scenario == ScenarioKind::Quantum) return c.number("energy") / (2.0 * kPi);
  return c.number("frequency");
}

PulseSpec parse_pulse(const json& doc, double f0) {
  PulseSpec spec = PulseSpec::narrowband(f0);
  if (doc.is_null()) return spec;
  if (!doc.is_object()) fail(ConfigError::Kind::BadValue, "pulse", "expected an object");
  check_keys(doc, "pulse.", {"envelope", "fwhm", "sample_rate", "record_length"});
  auto time_value = [&](const char* key, Dimension dim) {
    const std::string k = std::string("pulse.") + key;
    const ParamDef def{key, dim, "", 0, kInf, true};
    return parse_numeric(def, scalar_text(doc.at(key), k), k, std::nullopt);
  };
  bool record_given = false;
  if (doc.contains("envelope")) spec.envelope = parse_enum(doc["envelope"], "pulse.envelope", kEnvelopes);
  if (doc.contains("fwhm")) spec.envelope_duration = time_value("fwhm", Dimension::Time);
  if (doc.contains("sample_rate")) spec.sample_rate = time_value("sample_rate", Dimension::Frequency);
  if (doc.contains("record_length")) {
    spec.record_length = time_value("record_length", Dimension::Time);
    record_given = true;
  }
  if (!record_given) spec.record_length = 12.0 * spec.envelope_duration;
  try {
    spec.validate();
  } catch (const DomainError& e) {
    fail(ConfigError::Kind::OutOfRange, "pulse", e.what());
  }
  return spec;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, std::max(1, column - 1)};
}

json param_to_json(ScenarioKind kind, const std::string& name, const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double x = std::get<double>(v);
  const auto* def = find_param(kind, name);
  if (def && def->dim == Dimension::Angle) return format_number(x) + "rad";
  return x;
}

}  // namespace

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Ftir: return "ftir";
    case ScenarioKind::Waveguide: return "waveguide";
    case ScenarioKind::Lattice: return "lattice";
    case ScenarioKind::Acoustic: return "acoustic";
    case ScenarioKind::Quantum: return "quantum";
  }
  return "unknown";
}

std::string_view to_string(OutputKind k) {
  switch (k) {
    case OutputKind::Scatter: return "scatter";
    case OutputKind::Timing: return "timing";
    case OutputKind::Hartman: return "hartman";
    case OutputKind::Gh: return "gh";
    case OutputKind::Pulse: return "pulse";
    case OutputKind::Virtuality: return "virtuality";
  }
  return "unknown";
}

std::string_view to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::string_view to_string(ConfigError::Kind k) {
  switch (k) {
    case ConfigError::Kind::Syntax: return "syntax";
    case ConfigError::Kind::UnknownKey: return "unknown_key";
    case ConfigError::Kind::BadValue: return "bad_value";
    case ConfigError::Kind::OutOfRange: return "out_of_range";
  }
  return "unknown";
}

ConfigError::ConfigError(Kind kind, std::string key, std::string message, int line, int column)
    : std::runtime_error("config:" + std::string(to_string(kind)) + ":" +
                         (line > 0 ? std::to_string(line) + ":" + std::to_string(column)
                                   : key) +
                         ": " + message),
      kind_(kind),
      key_(std::move(key)),
      line_(line),
      column_(column) {}

double SweepAxis::value(int index) const {
  if (steps <= 1) return start;
  return start + (stop - start) * static_cast<double>(index) / static_cast<double>(steps - 1);
}

double RunConfig::number(const std::string& name) const { return std::get<double>(params.at(name)); }

const std::string& RunConfig::choice(const std::string& name) const {
  return std::get<std::string>(params.at(name));
}

bool RunConfig::wants(OutputKind k) const {
  return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.scenario == b.scenario && a.params == b.params && a.sweep == b.sweep &&
         a.pulse == b.pulse && a.outputs == b.outputs && a.output_path == b.output_path &&
         a.format == b.format;
}

std::string_view barrier_parameter(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Ftir: return "gap";
    case ScenarioKind::Waveguide: return "length";
    case ScenarioKind::Lattice: return "periods";
    case ScenarioKind::Acoustic: return "periods";
    case ScenarioKind::Quantum: return "length";
  }
  return "";
}

bool integer_parameter(ScenarioKind k, const std::string& name) {
  const auto* def = find_param(k, name);
  return def && def->dim == Dimension::Count;
}

std::string parameter_unit(ScenarioKind k, const std::string& name) {
  const auto* def = find_param(k, name);
  if (!def) return "-";
  switch (def->dim) {
    case Dimension::Length: return "m";
    case Dimension::Frequency: return "Hz";
    case Dimension::Angle: return "rad";
    case Dimension::Time: return "s";
    case Dimension::Speed: return "m/s";
    case Dimension::Impedance: return "Pa*s/m";
    case Dimension::Natural: return "a.u.";
    case Dimension::Dimensionless:
    case Dimension::Count: return "-";
  }
  return "-";
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ConfigError(ConfigError::Kind::Syntax, "", e.what(), line, column);
  }
  return parse_config(doc);
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail(ConfigError::Kind::Syntax, "", "configuration must be an object");
  check_keys(doc, "", {"scenario", "params", "sweep", "pulse", "outputs", "format", "out"});

  RunConfig cfg;
  if (doc.contains("scenario")) cfg.scenario = parse_enum(doc["scenario"], "scenario", kScenarios);

  const json params = doc.value("params", json::object());
  if (!params.is_object()) fail(ConfigError::Kind::BadValue, "params", "expected an object");
  std::set<std::string> given;
  for (const auto& [key, _] : params.items()) {
    if (!find_param(cfg.scenario, key)) {
      fail(ConfigError::Kind::UnknownKey, "params." + key,
           "unknown parameter '" + key + "' for scenario " + std::string(to_string(cfg.scenario)));
    }
    given.insert(key);
  }

  // Frequencies and speeds first: "lambda" lengths depend on them.
  std::optional<double> wavelength;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& def : schema(cfg.scenario)) {
      if (def.primary() != (pass == 0)) continue;
      const std::string name(def.name);
      const std::string key = "params." + name;
      if (!given.contains(name) && def.fallback == "auto") continue;
      if (def.is_choice()) {
        cfg.params[name] = parse_choice(def, given.contains(name) ? params[name] : json(def.fallback), key);
        continue;
      }
      const std::string text = given.contains(name) ? scalar_text(params[name], key)
                                                    : std::string(def.fallback);
      cfg.params[name] = parse_numeric(def, text, key, wavelength);
    }
    if (pass == 0) {
      // wavelength may depend on non-primary quantum parameters; computed lazily below
      if (cfg.scenario != ScenarioKind::Quantum) wavelength = wavelength_of(cfg.scenario, cfg.params);
    }
  }
  if (cfg.scenario == ScenarioKind::Quantum) wavelength = wavelength_of(cfg.scenario, cfg.params);
  resolve_auto(cfg.scenario, cfg.params, given);

  if (cfg.scenario == ScenarioKind::Waveguide && cfg.number("narrow") > cfg.number("wide")) {
    fail(ConfigError::Kind::OutOfRange, "params.narrow", "narrow section wider than the feed guide");
  }

  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    json sweep_obj;
    if (s.is_string()) {
      const auto parts = split_list(s.get<std::string>(), ':');
      if (parts.size() != 4) {
        fail(ConfigError::Kind::BadValue, "sweep", "expected param:start:stop:steps");
      }
      sweep_obj = {{"param", parts[0]}, {"start", parts[1]}, {"stop", parts[2]}, {"steps", parts[3]}};
    } else if (s.is_object()) {
      check_keys(s, "sweep.", {"param", "start", "stop", "steps"});
      sweep_obj = s;
    } else {
      fail(ConfigError::Kind::BadValue, "sweep", "expected an object or param:start:stop:steps");
    }
    for (const char* k : {"param", "start", "stop", "steps"}) {
      if (!sweep_obj.contains(k)) fail(ConfigError::Kind::BadValue, std::string("sweep.") + k, "missing");
    }
    SweepAxis axis;
    axis.parameter = sweep_obj["param"].is_string() ? sweep_obj["param"].get<std::string>() : "";
    const auto* def = find_param(cfg.scenario, axis.parameter);
    if (!def) {
      fail(ConfigError::Kind::UnknownKey, "sweep.param",
           "unknown sweep parameter '" + axis.parameter + "'");
    }
    if (def->is_choice()) fail(ConfigError::Kind::BadValue, "sweep.param", "cannot sweep a choice");
    axis.start = parse_numeric(*def, scalar_text(sweep_obj["start"], "sweep.start"), "sweep.start", wavelength);
    axis.stop = parse_numeric(*def, scalar_text(sweep_obj["stop"], "sweep.stop"), "sweep.stop", wavelength);
    const ParamDef steps_def{"steps", Dimension::Count, "", 2, 1e6};
    axis.steps = static_cast<int>(
        parse_numeric(steps_def, scalar_text(sweep_obj["steps"], "sweep.steps"), "sweep.steps", std::nullopt));
    cfg.sweep = axis;
  }

  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    std::vector<std::string> names;
    if (o.is_string()) {
      names = split_list(o.get<std::string>(), ',');
    } else if (o.is_array()) {
      for (const auto& item : o) {
        if (!item.is_string()) fail(ConfigError::Kind::BadValue, "outputs", "expected strings");
        names.push_back(item.get<std::string>());
      }
    } else {
      fail(ConfigError::Kind::BadValue, "outputs", "expected a list");
    }
    for (const auto& n : names) cfg.outputs.push_back(parse_enum(json(n), "outputs", kOutputs));
  } else {
    cfg.outputs = {OutputKind::Timing};
  }
  std::sort(cfg.outputs.begin(), cfg.outputs.end());
  cfg.outputs.erase(std::unique(cfg.outputs.begin(), cfg.outputs.end()), cfg.outputs.end());
  if (cfg.outputs.empty()) fail(ConfigError::Kind::BadValue, "outputs", "no outputs requested");
  if (cfg.scenario != ScenarioKind::Ftir &&
      (cfg.wants(OutputKind::Gh) || cfg.wants(OutputKind::Virtuality))) {
    fail(ConfigError::Kind::BadValue, "outputs", "gh and virtuality need the ftir scenario");
  }

  if (doc.contains("pulse") || cfg.wants(OutputKind::Pulse)) {
    cfg.pulse = parse_pulse(doc.value("pulse", json()), center_frequency(cfg));
  }
  if (doc.contains("format")) cfg.format = parse_enum(doc["format"], "format", kFormats);
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) fail(ConfigError::Kind::BadValue, "out", "expected a path");
    cfg.output_path = doc["out"].get<std::string>();
  }
  return cfg;
}

json to_json(const RunConfig& c) {
  json doc;
  doc["scenario"] = std::string(to_string(c.scenario));
  json params = json::object();
  for (const auto& [name, value] : c.params) params[name] = param_to_json(c.scenario, name, value);
  doc["params"] = params;
  if (c.sweep) {
    doc["sweep"] = {{"param", c.sweep->parameter},
                    {"start", param_to_json(c.scenario, c.sweep->parameter, c.sweep->start)},
                    {"stop", param_to_json(c.scenario, c.sweep->parameter, c.sweep->stop)},
                    {"steps", c.sweep->steps}};
  }
  if (c.pulse) {
    doc["pulse"] = {{"envelope", std::string(to_string(c.pulse->envelope))},
                    {"fwhm", c.pulse->envelope_duration},
                    {"sample_rate", c.pulse->sample_rate},
                    {"record_length", c.pulse->record_length}};
  }
  json outputs = json::array();
  for (auto o : c.outputs) outputs.push_back(std::string(to_string(o)));
  doc["outputs"] = outputs;
  doc["format"] = std::string(to_string(c.format));
  doc["out"] = c.output_path;
  return doc;
}

std::string dump_config(const RunConfig& config) { return to_json(config).dump(2); }

}  // namespace evanesim::app
