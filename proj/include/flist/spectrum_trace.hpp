#pragma once

#include <functional>
#include <vector>

#include "flist/direct_scattering.hpp"
#include "flist/ensemble.hpp"

namespace flist {

// a(k) = prod_{2N} (k - k_j)/(k - conj k_j).
cd trace_formula_a(const SolitonEnsemble& ens, cd k);

// Partial Blaschke product over a subset of the expanded (2N) pole list.
struct BlaschkeSplit {
  std::vector<std::size_t> delta_set;
  std::vector<cd> zeros;  // k_j, j in delta_set

  cd a_delta(cd k) const;
  // Derivative of a_delta at one of its own zeros.
  cd a_delta_prime_at_zero(std::size_t which) const;
};

BlaschkeSplit blaschke_split(const SolitonEnsemble& ens, const std::vector<std::size_t>& delta);

// Reflection coefficient sampled on both axes, with L(z) = log(1 + r(z) conj r(conj z))
// interpolated linearly along each axis (zero beyond the sampled range and
// pinned to zero at the origin).
class ReflectionSamples {
public:
  ReflectionSamples() = default;
  ReflectionSamples(std::vector<double> real_k, cvec r_real, std::vector<double> imag_s, cvec r_imag);
  static ReflectionSamples from_scattering(const ScatteringData& sd);

  bool vanishes() const { return vanishes_; }
  // Linear interpolation of r along the axis carrying z.
  cd r_at(cd z) const;
  double L_real(double k) const;
  double L_imag(double s) const;
  double L_at(cd z) const;
  // Node positions (with the origin) along one axis, sorted.
  const std::vector<double>& real_knots() const { return real_knots_; }
  const std::vector<double>& imag_knots() const { return imag_knots_; }
  double node_spacing() const { return spacing_; }

private:
  std::vector<double> real_k_, imag_s_;
  cvec r_real_, r_imag_;
  std::vector<double> real_knots_, real_L_, imag_knots_, imag_L_;
  double spacing_ = 0.0;
  bool vanishes_ = true;
};

// Straight oriented segment lying on R or on iR.
struct ContourPiece {
  cd start;
  cd end;
};

// Pieces of Sigma with |zeta| < radius, oriented outward on R and inward on iR.
std::vector<ContourPiece> inner_cross(double radius);

// int_piece L(zeta)/(zeta - k) dzeta, exact for the piecewise-linear L.
cd cauchy_integral(const ReflectionSamples& r, const std::vector<ContourPiece>& pieces, cd k);

// exp( sign * (1/(pi i)) * sum_pieces int L(zeta)/(zeta - k) dzeta ).
cd delta_exponential(const ReflectionSamples& r, const std::vector<ContourPiece>& pieces, int sign, cd k);

// delta(z) = exp((1/(2 pi i)) int L/(zeta - z)) with the logarithmic self-term at
// a contour point z removed (log of the distance to the far endpoint is kept).
cd delta_regularized(const ReflectionSamples& r, const std::vector<ContourPiece>& pieces, cd z);

struct SearchBox {
  double re_min, re_max, im_min, im_max;
};

struct ZeroSearchOptions {
  int edge_samples = 32;
  int max_bisections = 14;
  int max_depth = 8;
  double newton_tol = 1e-10;
  int newton_iters = 60;
  double simple_tol = 1e-8;
};

// Winding number of f around the box boundary (counter-clockwise), unrounded.
double winding_number(const std::function<cd(cd)>& f, const SearchBox& box,
                      const ZeroSearchOptions& opts = {});

// Zeros of an analytic function inside the box by subdivision and Newton.
std::vector<cd> find_zeros(const std::function<cd(cd)>& f, const SearchBox& box,
                           const ZeroSearchOptions& opts = {});

SolitonEnsemble find_discrete_spectrum(const SampledPotential& u, const SearchBox& box,
                                       const JostOptions& jopts = {},
                                       const ZeroSearchOptions& opts = {});

}  // namespace flist
