#include "flist/complex_gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace flist {

namespace {

constexpr double kG = 7.0;
constexpr double kCoef[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Gamma(z) for Re z >= 1/2.
std::complex<double> lanczos(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> x = kCoef[0];
  for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + double(i));
  const std::complex<double> t = z + kG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

bool is_pole(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

}  // namespace

std::complex<double> complex_gamma(std::complex<double> z) {
  if (is_pole(z)) return {std::numeric_limits<double>::infinity(), 0.0};
  if (z.real() < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * lanczos(1.0 - z));
  return lanczos(z);
}

std::complex<double> reciprocal_gamma(std::complex<double> z) {
  if (is_pole(z)) return 0.0;
  if (z.real() < 0.5) return std::sin(std::numbers::pi * z) * lanczos(1.0 - z) / std::numbers::pi;
  return 1.0 / lanczos(z);
}

}  // namespace flist
