// evanesim <scenario> [--param value ...] [--sweep param:start:stop:steps]
//          [--outputs list] [--format csv|json] [--out path] [--workers N]
//
// Exit codes: 0 success, 2 config error, 3 numeric-domain error, 4 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "evanesim/app/config.hpp"
#include "evanesim/app/emit.hpp"
#include "evanesim/app/run.hpp"
#include "evanesim/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

using nlohmann::json;
using namespace evanesim;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw app::IoError(path, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "--n-high 1.7" style extras become params {"n_high": "1.7"}.
json extra_params(const std::vector<std::string>& extras) {
  json params = json::object();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (!key.starts_with("--") || key.size() < 3) {
      throw app::ConfigError(app::ConfigError::Kind::BadValue, key,
                             "expected --param value, got '" + key + "'");
    }
    key.erase(0, 2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else if (i + 1 < extras.size()) {
      value = extras[++i];
    } else {
      throw app::ConfigError(app::ConfigError::Kind::BadValue, key, "missing value");
    }
    std::replace(key.begin(), key.end(), '-', '_');
    params[key] = value;
  }
  return params;
}

int workers_from_env() {
  if (const char* env = std::getenv("EVANESIM_WORKERS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw app::ConfigError(app::ConfigError::Kind::BadValue, "EVANESIM_WORKERS",
                             std::string("not an integer: ") + env);
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Evanescent-mode tunneling simulator"};
  cli.allow_extras();

  std::string scenario;
  std::string config_path;
  std::string sweep;
  std::string outputs;
  std::string format;
  std::string out;
  std::optional<int> workers;
  std::string pulse_envelope, pulse_fwhm, pulse_rate, pulse_record;
  bool print_config = false;

  cli.add_option("scenario", scenario, "ftir | waveguide | lattice | acoustic | quantum");
  cli.add_option("--config", config_path, "JSON configuration file (flags override it)");
  cli.add_option("--sweep", sweep, "param:start:stop:steps");
  cli.add_option("--outputs", outputs, "comma list of scatter,timing,hartman,gh,pulse,virtuality");
  cli.add_option("--format", format, "csv | json");
  cli.add_option("--out", out, "output directory");
  cli.add_option("--workers", workers, "worker threads (overrides EVANESIM_WORKERS)");
  cli.add_option("--pulse-envelope", pulse_envelope, "gaussian | raised_cosine");
  cli.add_option("--pulse-fwhm", pulse_fwhm, "envelope FWHM, e.g. 5ns");
  cli.add_option("--pulse-rate", pulse_rate, "sample rate, e.g. 146.4GHz");
  cli.add_option("--pulse-record", pulse_record, "record length, e.g. 64ns");
  cli.add_flag("--print-config", print_config, "print the resolved configuration and exit");
  cli.footer("Scenario parameters are passed as --name value, e.g. --gap 32.8mm --angle 45.");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    json doc = json::object();
    if (!config_path.empty()) {
      const auto text = read_file(config_path);
      doc = json::parse(text, nullptr, false);
      if (doc.is_discarded()) {
        app::parse_config(std::string_view(text));  // rethrows with line/column
      }
    }
    if (!scenario.empty()) {
      if (doc.contains("scenario") && doc["scenario"] != scenario) doc.erase("params");
      doc["scenario"] = scenario;
    }
    const json extras = extra_params(cli.remaining());
    for (const auto& [k, v] : extras.items()) doc["params"][k] = v;
    if (!sweep.empty()) doc["sweep"] = sweep;
    if (!outputs.empty()) doc["outputs"] = outputs;
    if (!format.empty()) doc["format"] = format;
    if (!out.empty()) doc["out"] = out;
    auto set_pulse = [&](const char* key, const std::string& v) {
      if (!v.empty()) doc["pulse"][key] = v;
    };
    set_pulse("envelope", pulse_envelope);
    set_pulse("fwhm", pulse_fwhm);
    set_pulse("sample_rate", pulse_rate);
    set_pulse("record_length", pulse_record);

    const auto config = app::parse_config(doc);
    if (print_config) {
      std::cout << app::dump_config(config) << '\n';
      return 0;
    }
    const int n_workers = workers ? *workers : workers_from_env();
    const auto bundle = app::run(config, n_workers);
    for (const auto& path : app::emit(bundle, config.format, config.output_path)) {
      std::cout << path.string() << '\n';
    }
    return 0;
  } catch (const app::ConfigError& e) {
    std::cerr << "evanesim: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "evanesim: " << e.what() << '\n';
    return kExitDomain;
  } catch (const app::IoError& e) {
    std::cerr << "evanesim: " << e.what() << '\n';
    return kExitIo;
  }
}
