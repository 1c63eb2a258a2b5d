#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace flist {

// Thin owner of a pair of FFTW plans for one transform length.  Unnormalized
// forward transform; inverse divides by n.
class Fft {
public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, std::complex<double>* out) const;

  std::vector<std::complex<double>> forward(const std::vector<std::complex<double>>& in) const;
  std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>>& in) const;

private:
  std::size_t n_;
  void* fwd_ = nullptr;
  void* inv_ = nullptr;
};

// Angular wavenumbers 2 pi j / (n dx) in FFT order; the Nyquist entry (even n)
// is returned as its negative value.
std::vector<double> wavenumbers(std::size_t n, double dx);

}  // namespace flist
