#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace evanesim::detail {

/// Real-input transforms of a fixed length backed by FFTW. Plans are built
/// with FFTW_ESTIMATE so the same length always yields the same plan.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  /// Unnormalized forward transform, n/2+1 bins.
  std::vector<std::complex<double>> forward(const std::vector<double>& x);
  /// Inverse of forward(), including the 1/n factor.
  std::vector<double> inverse(const std::vector<std::complex<double>>& half);
  /// |analytic signal| built from the one-sided spectrum: positive bins
  /// doubled, negative bins zeroed, complex inverse transform.
  std::vector<double> envelope(const std::vector<std::complex<double>>& half);

 private:
  std::size_t n_;
  double* real_buf_;
  std::complex<double>* half_buf_;
  std::complex<double>* full_in_;
  std::complex<double>* full_out_;
  void* forward_plan_;
  void* inverse_plan_;
  void* analytic_plan_;
};

}  // namespace evanesim::detail
