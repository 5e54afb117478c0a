#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>

namespace fuselet::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft2d::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

RealFft2d::RealFft2d(std::size_t height, std::size_t width)
    : height_(height), width_(width), plans_(std::make_unique<Plans>()) {
  const std::size_t n_real = height * width;
  const std::size_t n_spec = height * spectrum_width();
  std::lock_guard lock(planner_mutex());
  plans_->real = fftw_alloc_real(n_real);
  plans_->spec = fftw_alloc_complex(n_spec);
  if (!plans_->real || !plans_->spec) {
    fftw_free(plans_->real);
    fftw_free(plans_->spec);
    throw std::bad_alloc();
  }
  const int h = static_cast<int>(height);
  const int w = static_cast<int>(width);
  plans_->fwd = fftw_plan_dft_r2c_2d(h, w, plans_->real, plans_->spec, FFTW_ESTIMATE);
  plans_->inv = fftw_plan_dft_c2r_2d(h, w, plans_->spec, plans_->real, FFTW_ESTIMATE);
}

RealFft2d::~RealFft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->fwd);
  fftw_destroy_plan(plans_->inv);
  fftw_free(plans_->real);
  fftw_free(plans_->spec);
}

std::vector<std::complex<double>> RealFft2d::forward(std::span<const double> samples) {
  std::copy(samples.begin(), samples.end(), plans_->real);
  fftw_execute(plans_->fwd);
  const std::size_t n = height_ * spectrum_width();
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {plans_->spec[i][0], plans_->spec[i][1]};
  return out;
}

std::vector<double> RealFft2d::inverse(std::span<const std::complex<double>> spectrum) {
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    plans_->spec[i][0] = spectrum[i].real();
    plans_->spec[i][1] = spectrum[i].imag();
  }
  fftw_execute(plans_->inv);  // c2r clobbers spec; it is refilled on every call
  const std::size_t n = height_ * width_;
  const double norm = 1.0 / static_cast<double>(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = plans_->real[i] * norm;
  return out;
}

}  // namespace fuselet::detail
