#include "evanesim/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"
#include "fft.hpp"

namespace evanesim {

namespace {

constexpr double kBandFloor = 1e-2;  // 40 dB in amplitude

double envelope_value(Envelope shape, double fwhm, double tau) {
  if (shape == Envelope::Gaussian) {
    const double x = tau / fwhm;
    return std::exp(-4.0 * std::log(2.0) * x * x);
  }
  if (std::abs(tau) >= fwhm) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * tau / fwhm));
}

struct Band {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

Band band_40db(const std::vector<std::complex<double>>& spectrum) {
  double peak = 0.0;
  for (const auto& x : spectrum) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) throw DomainError(ErrorCode::EmptySignal, "incident spectrum is zero");
  Band b{spectrum.size(), 0};
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (std::abs(spectrum[k]) >= kBandFloor * peak) {
      b.lo = std::min(b.lo, k);
      b.hi = k;
    }
  }
  return b;
}

Signal make_signal(detail::RealFft& fft, std::vector<std::complex<double>> spectrum) {
  Signal s;
  s.samples = fft.inverse(spectrum);
  s.envelope = fft.envelope(spectrum);
  s.spectrum = std::move(spectrum);
  return s;
}

// Channel response at `omega`: exact on grid nodes, linear in magnitude and
// unwrapped phase between nodes, clamped to the edge values outside.
Complex response(const ScatterSpectrum& s, Channel channel, double omega) {
  const auto& values = channel == Channel::Transmission ? s.t : s.r;
  const auto& phase = channel == Channel::Transmission ? s.phase_t : s.phase_r;
  const auto& w = s.grid.omega;
  const auto n = w.size();
  if (omega <= w.front()) return values.front();
  if (omega >= w.back()) return values.back();
  const double pos = (omega - w.front()) / s.grid.spacing();
  auto i = static_cast<std::size_t>(std::floor(pos));
  double frac = pos - static_cast<double>(i);
  if (i >= n - 1) return values.back();
  if (frac < 1e-9) return values[i];
  if (frac > 1.0 - 1e-9) return values[i + 1];
  const double mag = (1.0 - frac) * std::abs(values[i]) + frac * std::abs(values[i + 1]);
  const double ph = (1.0 - frac) * phase[i] + frac * phase[i + 1];
  return std::polar(mag, ph);
}

}  // namespace

std::string_view to_string(Envelope e) {
  return e == Envelope::Gaussian ? "gaussian" : "raised_cosine";
}

double PulseSpec::fractional_bandwidth() const {
  const double k = envelope == Envelope::Gaussian ? 4.0 * std::log(2.0) / kPi : 1.0;
  return k / (envelope_duration * carrier);
}

void PulseSpec::validate() const {
  auto fail = [](const char* what) { throw DomainError(ErrorCode::InvalidArgument, what); };
  if (!(carrier > 0.0) || !(envelope_duration > 0.0)) fail("pulse carrier and FWHM must be positive");
  if (!(sample_rate > 8.0 * carrier)) fail("sample rate must exceed 8x the carrier");
  if (!(record_length > 8.0 * envelope_duration)) fail("record must exceed 8x the envelope FWHM");
  if (!(fractional_bandwidth() <= 0.2)) fail("fractional bandwidth exceeds 20%");
}

PulseSpec PulseSpec::narrowband(double carrier, double cycles) {
  PulseSpec s;
  s.carrier = carrier;
  s.envelope = Envelope::Gaussian;
  s.envelope_duration = cycles / carrier;
  s.sample_rate = 16.0 * carrier;
  s.record_length = 12.0 * s.envelope_duration;
  return s;
}

double PulseTrace::bin_omega(std::size_t k) const {
  return 2.0 * kPi * static_cast<double>(k) * spec.sample_rate / static_cast<double>(time.size());
}

PulseTrace synthesize(const PulseSpec& spec) {
  spec.validate();
  PulseTrace trace;
  trace.spec = spec;
  const auto n = static_cast<std::size_t>(std::llround(spec.record_length * spec.sample_rate));
  const double center = spec.record_length / 4.0;
  const double omega_c = 2.0 * kPi * spec.carrier;

  trace.time.resize(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / spec.sample_rate;
    trace.time[i] = t;
    const double tau = t - center;
    x[i] = envelope_value(spec.envelope, spec.envelope_duration, tau) * std::cos(omega_c * tau);
  }

  detail::RealFft fft(n);
  trace.incident = make_signal(fft, fft.forward(x));
  return trace;
}

FrequencyGrid channel_grid(const PulseTrace& trace, std::size_t margin_bins) {
  const auto band = band_40db(trace.incident.spectrum);
  const std::size_t last = trace.incident.spectrum.size() - 1;
  const std::size_t lo = band.lo > margin_bins ? band.lo - margin_bins : 1;
  const std::size_t hi = std::min(last, band.hi + margin_bins);
  FrequencyGrid grid;
  grid.center_frequency = trace.spec.carrier;
  for (std::size_t k = std::max<std::size_t>(lo, 1); k <= hi; ++k) {
    grid.omega.push_back(trace.bin_omega(k));
  }
  return grid;
}

PulseTrace apply_channel(const PulseTrace& incident, const ScatterSpectrum& spectrum,
                         Channel channel) {
  if (incident.incident.empty()) {
    throw DomainError(ErrorCode::EmptySignal, "trace has no incident signal");
  }
  if (spectrum.grid.size() < 2) {
    throw DomainError(ErrorCode::BandwidthCoverage, "channel spectrum has fewer than 2 points");
  }
  const auto band = band_40db(incident.incident.spectrum);
  const double slack = 1e-9 * spectrum.grid.spacing();
  if (spectrum.grid.omega.front() > incident.bin_omega(band.lo) + slack ||
      spectrum.grid.omega.back() < incident.bin_omega(band.hi) - slack) {
    throw DomainError(ErrorCode::BandwidthCoverage,
                      "channel spectrum does not cover the pulse's 40 dB bandwidth");
  }

  const auto& x = incident.incident.spectrum;
  std::vector<std::complex<double>> y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    // FFT bin k carries e^{+i w t}; the physical e^{-i w t} component sees H.
    y[k] = std::conj(response(spectrum, channel, incident.bin_omega(k))) * x[k];
  }

  PulseTrace out = incident;
  detail::RealFft fft(incident.time.size());
  auto& target = channel == Channel::Transmission ? out.transmitted : out.reflected;
  target = make_signal(fft, std::move(y));
  return out;
}

PulseTrace propagate(const PulseSpec& spec, const Stack& stack) {
  auto trace = synthesize(spec);
  const auto spectrum = scatter_spectrum(stack, channel_grid(trace));
  trace = apply_channel(trace, spectrum, Channel::Transmission);
  trace = apply_channel(trace, spectrum, Channel::Reflection);
  return trace;
}

Arrival arrival_times(std::span<const double> time, const Signal& signal) {
  const auto& e = signal.envelope;
  if (e.empty() || e.size() != time.size()) {
    throw DomainError(ErrorCode::EmptySignal, "signal has no samples");
  }
  const auto max_it = std::max_element(e.begin(), e.end());
  if (!(*max_it > 0.0)) throw DomainError(ErrorCode::EmptySignal, "signal is identically zero");

  const auto i = static_cast<std::size_t>(max_it - e.begin());
  const double dt = time.size() > 1 ? time[1] - time[0] : 0.0;
  Arrival a;
  a.peak = time[i];
  double peak_value = e[i];
  if (i > 0 && i + 1 < e.size() && e[i - 1] > 0.0 && e[i + 1] > 0.0) {
    // Parabola through the log-envelope; exact for a Gaussian.
    const double l = std::log(e[i - 1]);
    const double c = std::log(e[i]);
    const double r = std::log(e[i + 1]);
    const double curvature = l - 2.0 * c + r;
    if (curvature < 0.0) {
      const double delta = 0.5 * (l - r) / curvature;
      a.peak = time[i] + delta * dt;
      peak_value = std::exp(c - 0.25 * (l - r) * delta);
    }
  }

  double weight = 0.0;
  double moment = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double w = e[k] * e[k];
    weight += w;
    moment += w * time[k];
  }
  a.centroid = moment / weight;

  const double half = 0.5 * peak_value;
  a.half_max_front = time[0];
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] >= half) {
      if (k > 0) {
        const double frac = (half - e[k - 1]) / (e[k] - e[k - 1]);
        a.half_max_front = time[k - 1] + frac * dt;
      } else {
        a.half_max_front = time[0];
      }
      break;
    }
  }
  return a;
}

double signal_energy(const Signal& signal) {
  return std::inner_product(signal.samples.begin(), signal.samples.end(),
                            signal.samples.begin(), 0.0);
}

double envelope_correlation(const Signal& a, const Signal& b) {
  const double ab = std::inner_product(a.envelope.begin(), a.envelope.end(), b.envelope.begin(), 0.0);
  const double aa = std::inner_product(a.envelope.begin(), a.envelope.end(), a.envelope.begin(), 0.0);
  const double bb = std::inner_product(b.envelope.begin(), b.envelope.end(), b.envelope.begin(), 0.0);
  return ab / std::sqrt(aa * bb);
}

}  // namespace evanesim
