#include "flist/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>

namespace flist {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  std::vector<fftw_complex> scratch_in(n), scratch_out(n);
  const int len = static_cast<int>(n);
  fwd_ = fftw_plan_dft_1d(len, scratch_in.data(), scratch_out.data(), FFTW_FORWARD, FFTW_ESTIMATE);
  inv_ = fftw_plan_dft_1d(len, scratch_in.data(), scratch_out.data(), FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_));
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void Fft::inverse(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(inv_),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double s = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] *= s;
}

std::vector<std::complex<double>> Fft::forward(const std::vector<std::complex<double>>& in) const {
  std::vector<std::complex<double>> out(n_);
  forward(in.data(), out.data());
  return out;
}

std::vector<std::complex<double>> Fft::inverse(const std::vector<std::complex<double>>& in) const {
  std::vector<std::complex<double>> out(n_);
  inverse(in.data(), out.data());
  return out;
}

std::vector<double> wavenumbers(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const long jj = (j < (n + 1) / 2) ? static_cast<long>(j)
                                      : static_cast<long>(j) - static_cast<long>(n);
    k[j] = base * static_cast<double>(jj);
  }
  return k;
}

}  // namespace flist
