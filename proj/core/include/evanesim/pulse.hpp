#pragma once

// Time-domain reproduction of the pulse experiment: a smooth-envelope
// carrier pulse is filtered by r(omega) / t(omega) and the arrival of each
// signal is estimated three ways.

#include <complex>
#include <span>
#include <vector>

#include "evanesim/timing.hpp"
#include "evanesim/xfermat.hpp"

namespace evanesim {

enum class Envelope { Gaussian, RaisedCosine };

std::string_view to_string(Envelope e);

struct PulseSpec {
  double carrier = 9.15e9;            // Hz
  Envelope envelope = Envelope::Gaussian;
  double envelope_duration = 5e-9;    // s, FWHM of the amplitude envelope
  double sample_rate = 16 * 9.15e9;   // Hz
  double record_length = 64e-9;       // s

  /// Amplitude-spectrum FWHM divided by the carrier.
  double fractional_bandwidth() const;
  /// Throws InvalidArgument unless sample_rate > 8 carrier,
  /// record_length > 8 FWHM and fractional bandwidth <= 20%.
  void validate() const;

  /// Pulse of `cycles` carrier periods FWHM, 16x oversampled, 12 FWHM record.
  static PulseSpec narrowband(double carrier, double cycles = 50.0);

  friend bool operator==(const PulseSpec&, const PulseSpec&) = default;
};

struct Signal {
  std::vector<double> samples;
  std::vector<double> envelope;            // |analytic signal|
  std::vector<std::complex<double>> spectrum;  // one-sided FFT bins

  bool empty() const { return samples.empty(); }
};

struct Arrival {
  double peak = 0.0;
  double centroid = 0.0;
  double half_max_front = 0.0;
};

struct PulseTrace {
  PulseSpec spec;
  std::vector<double> time;
  Signal incident;
  Signal reflected;
  Signal transmitted;

  double sample_interval() const { return 1.0 / spec.sample_rate; }
  /// Angular frequency of FFT bin k.
  double bin_omega(std::size_t k) const;
};

/// Unit-peak carrier x envelope centred at record_length / 4.
PulseTrace synthesize(const PulseSpec& spec);

/// Uniform grid on the FFT bins spanning the incident pulse's 40 dB band,
/// widened by `margin_bins` on both sides.
FrequencyGrid channel_grid(const PulseTrace& trace, std::size_t margin_bins = 4);

/// Multiplies the incident spectrum by r or t and fills that output signal.
/// Throws BandwidthCoverage when the spectrum grid misses part of the 40 dB band.
PulseTrace apply_channel(const PulseTrace& incident, const ScatterSpectrum& spectrum,
                         Channel channel);

/// Both channels through `stack` on channel_grid(synthesize(spec)).
PulseTrace propagate(const PulseSpec& spec, const Stack& stack);

Arrival arrival_times(std::span<const double> time, const Signal& signal);

double signal_energy(const Signal& signal);

/// Normalized inner product of two envelopes (1 = identical shape, no shift).
double envelope_correlation(const Signal& a, const Signal& b);

}  // namespace evanesim
