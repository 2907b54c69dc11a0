#include "evanesim/app/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "evanesim/app/units.hpp"
#include "evanesim/errors.hpp"
#include "evanesim/pulse.hpp"
#include "evanesim/scenarios.hpp"
#include "evanesim/timing.hpp"
#include "evanesim/virtuality.hpp"

namespace evanesim::app {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setup {
  BarrierFamily family;
  double length = 0.0;
  double omega0 = 0.0;
  bool natural = false;  // quantum: energies and times in natural units
  std::optional<DoublePrismSpec> prism;

  double f0() const { return omega0 / (2.0 * kPi); }
  Stack stack() const { return family.build(family.snap(length)); }
  std::string length_unit() const { return natural ? "a.u." : "m"; }
  std::string time_unit() const { return natural ? "a.u." : "s"; }
};

// Ratio tau * f0, NaN where no delay exists (non-evanescent, zero length).
double ratio_or_nan(double tau, double f0) {
  return tau > 0.0 ? universal_ratio(tau, f0) : kNaN;
}

Setup make_setup(const RunConfig& c) {
  Setup s;
  switch (c.scenario) {
    case ScenarioKind::Ftir: {
      DoublePrismSpec spec;
      spec.prism_index = c.number("n");
      spec.gap = c.number("gap");
      spec.incidence_angle = c.number("angle");
      spec.polarization = c.choice("polarization") == "TE" ? Polarization::TE : Polarization::TM;
      spec.center_frequency = c.number("frequency");
      spec.lock = c.choice("lock") == "kx" ? TransverseLock::FixedWavenumber
                                           : TransverseLock::FixedAngle;
      s.family = ftir_family(spec);
      s.length = spec.gap;
      s.omega0 = spec.center_omega();
      s.prism = spec;
      break;
    }
    case ScenarioKind::Waveguide:
      s.family = waveguide_family(c.number("wide"), c.number("narrow"));
      s.length = c.number("length");
      s.omega0 = 2.0 * kPi * c.number("frequency");
      break;
    case ScenarioKind::Lattice: {
      LatticeSpec spec{c.number("n_high"), c.number("n_low"), c.number("d_high"), c.number("d_low"),
                       static_cast<int>(c.number("periods"))};
      s.family = lattice_family(spec);
      s.length = spec.periods * spec.period_length();
      s.omega0 = 2.0 * kPi * c.number("frequency");
      break;
    }
    case ScenarioKind::Acoustic: {
      AcousticArraySpec spec;
      spec.frequency = c.number("design_frequency");
      spec.host = AcousticMedium{c.number("sound_speed"), c.number("impedance"), "host"};
      spec.impedance_ratio = c.number("ratio");
      spec.periods = static_cast<int>(c.number("periods"));
      const auto cell = spec.cell();
      s.family = acoustic_family(spec);
      s.length = spec.periods * (cell[0].length + cell[1].length);
      s.omega0 = 2.0 * kPi * c.number("frequency");
      break;
    }
    case ScenarioKind::Quantum: {
      QuantumBarrierSpec spec{c.number("height"), c.number("length"), c.number("energy"),
                              c.number("mass")};
      s.family = quantum_family(spec);
      s.length = spec.barrier_length;
      s.omega0 = spec.particle_energy;
      s.natural = true;
      break;
    }
  }
  return s;
}

FrequencyGrid scatter_grid(const RunConfig& c, const Setup& s) {
  const double span = c.number("span");
  return FrequencyGrid::uniform(s.omega0 * (1.0 - span), s.omega0 * (1.0 + span),
                                static_cast<std::size_t>(c.number("points")), s.f0());
}

Table scatter_table(const RunConfig& c, const Setup& s) {
  const Stack stack = s.stack();
  const auto grid = scatter_grid(c, s);
  const auto sp = scatter_spectrum(stack, grid);
  Table t{"scatter",
          {{s.natural ? "E" : "f", s.natural ? "a.u." : "Hz"},
           {"r_re", "-"}, {"r_im", "-"}, {"t_re", "-"}, {"t_im", "-"},
           {"R", "-"}, {"T", "-"}, {"phase_r", "rad"}, {"phase_t", "rad"}},
          {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.omega[i];
    const double x = s.natural ? w : w / (2.0 * kPi);
    t.rows.push_back({x, sp.r[i].real(), sp.r[i].imag(), sp.t[i].real(), sp.t[i].imag(),
                      std::norm(sp.r[i]), flux_factor(stack, w) * std::norm(sp.t[i]),
                      sp.phase_r[i], sp.phase_t[i]});
  }
  return t;
}

std::vector<Table> timing_tables(const Setup& s) {
  const double d = s.family.snap(s.length);
  const auto times = phase_times_at(s.family.build(d), s.omega0);
  Table point{"timing",
              {{"d", s.length_unit()}, {"tau_t", s.time_unit()}, {"tau_r", s.time_unit()},
               {"ratio", "-"}},
              {{d, times.transmission, times.reflection,
                ratio_or_nan(times.transmission, s.f0())}}};

  const double kappa = s.family.decay(s.omega0);
  double tau_asym = kNaN;
  if (kappa > 0.0) {
    const auto lengths = default_hartman_lengths(kappa);
    tau_asym = hartman_scan(s.family, s.omega0, lengths).tau_asymptotic;
  }
  Table asym{"timing_asymptote",
             {{"tau_asym", s.time_unit()}, {"ratio_asym", "-"},
              {"kappa", s.natural ? "1/a.u." : "1/m"}},
             {{tau_asym, ratio_or_nan(tau_asym, s.f0()), kappa}}};
  return {point, asym};
}

Table hartman_table(const RunConfig& c, const Setup& s) {
  Table t{"hartman",
          {{"d", s.length_unit()}, {"kappa_d", "-"}, {"tau_t", s.time_unit()},
           {"tau_r", s.time_unit()}},
          {}};
  if (c.sweep && c.sweep->parameter == barrier_parameter(c.scenario)) {
    const double d = s.family.snap(s.length);
    const double kappa = s.family.decay(s.omega0);
    const auto times = phase_times_at(s.family.build(d), s.omega0);
    t.rows.push_back({d, std::max(kappa, 0.0) * d, times.transmission, times.reflection});
    return t;
  }
  const auto lengths = default_hartman_lengths(s.family.decay(s.omega0));
  for (const auto& p : hartman_scan(s.family, s.omega0, lengths).curve) {
    t.rows.push_back({p.length, p.kappa_length, p.tau_t, p.tau_r});
  }
  return t;
}

Table gh_table(const RunConfig& c, const Setup& s) {
  const auto& spec = *s.prism;
  const auto mode = c.choice("gh_mode") == "finite" ? GhMode::FiniteGap : GhMode::SingleInterface;
  const double shift = goos_haenchen_shift(spec, s.omega0, mode);
  return Table{"gh",
               {{"angle", "rad"}, {"shift", "m"}, {"shift_over_lambda", "-"}},
               {{spec.incidence_angle, shift, shift / spec.wavelength()}}};
}

std::vector<Table> pulse_tables(const RunConfig& c, const Setup& s) {
  const auto trace = propagate(*c.pulse, s.stack());
  const std::string tu = s.time_unit();
  Table samples{"pulse",
                {{"t", tu}, {"incident", "-"}, {"reflected", "-"}, {"transmitted", "-"},
                 {"incident_env", "-"}, {"reflected_env", "-"}, {"transmitted_env", "-"}},
                {}};
  samples.rows.reserve(trace.time.size());
  for (std::size_t i = 0; i < trace.time.size(); ++i) {
    samples.rows.push_back({trace.time[i], trace.incident.samples[i], trace.reflected.samples[i],
                            trace.transmitted.samples[i], trace.incident.envelope[i],
                            trace.reflected.envelope[i], trace.transmitted.envelope[i]});
  }
  Table arrivals{"pulse_arrivals",
                 {{"signal", ""}, {"peak", tu}, {"centroid", tu}, {"half_max_front", tu},
                  {"peak_delay", tu}, {"energy", "-"}},
                 {}};
  const auto reference = arrival_times(trace.time, trace.incident);
  const std::pair<const char*, const Signal*> signals[] = {
      {"incident", &trace.incident},
      {"reflected", &trace.reflected},
      {"transmitted", &trace.transmitted},
  };
  for (const auto& [name, sig] : signals) {
    const auto a = arrival_times(trace.time, *sig);
    arrivals.rows.push_back({std::string(name), a.peak, a.centroid, a.half_max_front,
                             a.peak - reference.peak, signal_energy(*sig)});
  }
  return {samples, arrivals};
}

Table virtuality_table(const Setup& s) {
  const auto rep = uncertainty_report(*s.prism, s.omega0);
  return Table{"virtuality",
               {{"kappa", "1/m"}, {"delta_x", "m"}, {"delta_p", "kg*m/s"}, {"delta_n", "-"},
                {"einstein_sign", ""}, {"raised_kz_re", "1/m"}, {"raised_kz_im", "1/m"},
                {"raised", ""}},
               {{rep.kappa, rep.delta_x, rep.delta_p_bound, rep.delta_n,
                 std::string(to_string(rep.energy_sign)), rep.raised.value.real(),
                 rep.raised.value.imag(), std::string(to_string(rep.raised_classification))}}};
}

std::vector<Table> evaluate_point(const RunConfig& c) {
  const Setup s = make_setup(c);
  std::vector<Table> out;
  for (auto kind : c.outputs) {
    switch (kind) {
      case OutputKind::Scatter: out.push_back(scatter_table(c, s)); break;
      case OutputKind::Timing:
        for (auto& t : timing_tables(s)) out.push_back(std::move(t));
        break;
      case OutputKind::Hartman: out.push_back(hartman_table(c, s)); break;
      case OutputKind::Gh: out.push_back(gh_table(c, s)); break;
      case OutputKind::Pulse:
        for (auto& t : pulse_tables(c, s)) out.push_back(std::move(t));
        break;
      case OutputKind::Virtuality: out.push_back(virtuality_table(s)); break;
    }
  }
  return out;
}

RunConfig at_point(const RunConfig& c, int index) {
  if (!c.sweep) return c;
  RunConfig point = c;
  double v = c.sweep->value(index);
  if (integer_parameter(c.scenario, c.sweep->parameter)) v = std::round(v);
  point.params[c.sweep->parameter] = v;
  return point;
}

bool cell_equal(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return std::get<std::string>(a) == std::get<std::string>(b);
}

std::string hex(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xF];
  return s;
}

std::vector<std::pair<std::string, std::string>> provenance(const RunConfig& c) {
  const Setup s = make_setup(c);
  std::vector<std::pair<std::string, std::string>> p{
      {"version", EVANESIM_VERSION},
      {"convention_hash", hex(convention_hash())},
      {"scenario", std::string(to_string(c.scenario))},
      {"omega0", format_number(s.omega0)},
      {"f0", format_number(s.f0())},
      {"grid_points", format_number(c.number("points"))},
      {"grid_span", format_number(c.number("span"))},
      {"phase_time_stencil", "9-point relative-step 1e-4"},
  };
  if (c.sweep) {
    p.emplace_back("sweep_parameter", c.sweep->parameter);
    p.emplace_back("sweep_start", format_number(c.sweep->start));
    p.emplace_back("sweep_stop", format_number(c.sweep->stop));
    p.emplace_back("sweep_steps", std::to_string(c.sweep->steps));
  }
  if (c.pulse) {
    p.emplace_back("pulse_sample_rate", format_number(c.pulse->sample_rate));
    p.emplace_back("pulse_record_length", format_number(c.pulse->record_length));
  }
  return p;
}

}  // namespace

bool operator==(const Table& a, const Table& b) {
  if (a.name != b.name || a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
      if (!cell_equal(a.rows[i][j], b.rows[i][j])) return false;
    }
  }
  return true;
}

bool operator==(const ResultBundle& a, const ResultBundle& b) {
  return a.config == b.config && a.provenance == b.provenance && a.tables == b.tables;
}

const Table* ResultBundle::find(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

ResultBundle run(const RunConfig& config, int workers) {
  const int points = config.sweep ? config.sweep->steps : 1;
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, points);

  std::vector<std::vector<Table>> results(static_cast<std::size_t>(points));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(points));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next.fetch_add(1); i < points; i = next.fetch_add(1)) {
      try {
        results[static_cast<std::size_t>(i)] = evaluate_point(at_point(config, i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (int i = 0; i < points; ++i) {
    const auto& err = errors[static_cast<std::size_t>(i)];
    if (!err) continue;
    std::string where = "sweep point " + std::to_string(i);
    if (config.sweep) {
      where += " (" + config.sweep->parameter + "=" + format_number(at_point(config, i).number(config.sweep->parameter)) + ")";
    }
    try {
      std::rethrow_exception(err);
    } catch (const DomainError& e) {
      std::string msg = e.what();
      const auto prefix = std::string(to_string(e.code())) + ": ";
      if (msg.starts_with(prefix)) msg.erase(0, prefix.size());
      throw DomainError(e.code(), where + ": " + msg);
    }
  }

  ResultBundle bundle;
  bundle.config = config;
  bundle.provenance = provenance(config);
  for (std::size_t t = 0; t < results.front().size(); ++t) {
    Table merged = results.front()[t];
    merged.rows.clear();
    if (config.sweep) {
      merged.columns.insert(merged.columns.begin(),
                            Column{config.sweep->parameter,
                                   parameter_unit(config.scenario, config.sweep->parameter)});
    }
    for (int i = 0; i < points; ++i) {
      for (const auto& row : results[static_cast<std::size_t>(i)][t].rows) {
        auto out = row;
        if (config.sweep) {
          out.insert(out.begin(), at_point(config, i).number(config.sweep->parameter));
        }
        merged.rows.push_back(std::move(out));
      }
    }
    bundle.tables.push_back(std::move(merged));
  }
  return bundle;
}

}  // namespace evanesim::app
