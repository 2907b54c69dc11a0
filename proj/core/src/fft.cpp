#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace evanesim::detail {

namespace {
// Only fftw_execute* is thread-safe; planning must be serialized.
std::mutex planner_mutex;
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  const int len = static_cast<int>(n);
  real_buf_ = fftw_alloc_real(n);
  half_buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n / 2 + 1));
  full_in_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
  full_out_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));

  std::lock_guard lock(planner_mutex);
  forward_plan_ = fftw_plan_dft_r2c_1d(len, real_buf_, reinterpret_cast<fftw_complex*>(half_buf_),
                                       FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(len, reinterpret_cast<fftw_complex*>(half_buf_), real_buf_,
                                       FFTW_ESTIMATE);
  analytic_plan_ = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(full_in_),
                                    reinterpret_cast<fftw_complex*>(full_out_), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(analytic_plan_));
  }
  fftw_free(real_buf_);
  fftw_free(half_buf_);
  fftw_free(full_in_);
  fftw_free(full_out_);
}

std::vector<std::complex<double>> RealFft::forward(const std::vector<double>& x) {
  std::copy(x.begin(), x.end(), real_buf_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  return {half_buf_, half_buf_ + bins()};
}

std::vector<double> RealFft::inverse(const std::vector<std::complex<double>>& half) {
  std::copy(half.begin(), half.end(), half_buf_);
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));  // clobbers half_buf_
  std::vector<double> out(real_buf_, real_buf_ + n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<double> RealFft::envelope(const std::vector<std::complex<double>>& half) {
  std::fill(full_in_, full_in_ + n_, std::complex<double>(0.0));
  full_in_[0] = half[0];
  const std::size_t positive_end = (n_ % 2 == 0) ? n_ / 2 : n_ / 2 + 1;
  for (std::size_t k = 1; k < positive_end; ++k) full_in_[k] = 2.0 * half[k];
  if (n_ % 2 == 0) full_in_[n_ / 2] = half[n_ / 2];
  fftw_execute(static_cast<fftw_plan>(analytic_plan_));
  std::vector<double> env(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) env[i] = std::abs(full_out_[i]) * scale;
  return env;
}

}  // namespace evanesim::detail
