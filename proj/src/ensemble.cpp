#include "flist/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flist/errors.hpp"

namespace flist {

SolitonEnsemble::SolitonEnsemble(std::vector<Pole> reps) : reps_(std::move(reps)) {
  for (const auto& p : reps_) {
    if (!(p.k.real() > 0.0 && p.k.imag() > 0.0))
      raise(ErrorKind::Config, "pole representatives must lie in the open first quadrant");
    if (!std::isfinite(std::abs(p.c)) || p.c == std::complex<double>(0.0))
      raise(ErrorKind::Config, "norming constants must be finite and nonzero");
  }
  for (std::size_t i = 0; i < reps_.size(); ++i)
    for (std::size_t j = i + 1; j < reps_.size(); ++j)
      if (std::abs(reps_[i].k - reps_[j].k) < 1e-12)
        raise(ErrorKind::Config, "poles must be distinct");
}

std::vector<Pole> SolitonEnsemble::expanded() const {
  std::vector<Pole> all(reps_);
  for (const auto& p : reps_) all.push_back(Pole{-p.k, p.c});
  return all;
}

double SolitonEnsemble::rho() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& p : reps_) r = std::min({r, std::abs(p.k.real()), std::abs(p.k.imag())});
  return r;
}

double soliton_velocity(double alpha, double beta, std::complex<double> k) {
  const double m = std::abs(k);
  return -alpha * (1.0 - beta * beta / (4.0 * m * m * m * m));
}

}  // namespace flist
