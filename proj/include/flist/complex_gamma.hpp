#pragma once

#include <complex>

namespace flist {

// Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2.
std::complex<double> complex_gamma(std::complex<double> z);
// 1/Gamma(z), finite at the poles (returns 0 there).
std::complex<double> reciprocal_gamma(std::complex<double> z);

}  // namespace flist
