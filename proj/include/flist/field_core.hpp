#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace flist {

using cd = std::complex<double>;
using cvec = std::vector<cd>;

struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_points = 2;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
  std::vector<double> nodes() const;
  // Index of the node closest to x.
  std::size_t nearest(double x) const;
};

SpatialGrid make_grid(double x_min, double x_max, std::size_t n);

struct SampledPotential {
  SpatialGrid grid;
  cvec values;
  std::optional<cvec> derivative_values;
};

SampledPotential make_potential(const SpatialGrid& grid, cvec values);

enum class DerivativeMethod { Spectral, FiniteDifference };

// Returns u_x as a new potential (values = u_x).  Spectral by default.
SampledPotential derivative(const SampledPotential& u,
                            DerivativeMethod method = DerivativeMethod::Spectral);

// Spectral derivative of the given order evaluated at x + shift (shift in
// the same length units as the grid).  order 0 with a shift is band-limited
// interpolation onto the shifted nodes.
cvec spectral_derivative(const cvec& values, double dx, int order, double shift = 0.0);

// Largest boundary modulus of the two end samples.
double boundary_modulus(const SampledPotential& u);

// Raises DecayError when either end sample exceeds decay_tol.
void check_decay(const SampledPotential& u, double decay_tol = 1e-8);

// Trapezoid rule with unit weight per interior node times dx.
double trapezoid(const std::vector<double>& f, double dx);

struct SobolevReport {
  double l2_norm = 0.0;
  double h1_norm = 0.0;
  // sqrt( sum_{j<=3} int |d^j u|^2 + int <x>^6 |u|^2 ).
  double weighted_h33_estimate = 0.0;
};

SobolevReport sobolev_report(const SampledPotential& u, double decay_tol = 1e-8);

enum class NodeSpacing { Linear, Logarithmic };

struct SpectralContour {
  std::vector<double> real_nodes;  // k on R
  std::vector<double> imag_nodes;  // s with k = i s

  std::size_t size() const { return real_nodes.size() + imag_nodes.size(); }
  // Real nodes first, then imaginary nodes, in storage order.
  cvec nodes() const;
  bool is_real(std::size_t idx) const { return idx < real_nodes.size(); }
};

// Nodes +-k for k in [k_min, k_max], n_per_ray samples on each of the four
// half-axes.  Total node count is 4 * n_per_ray.
SpectralContour make_contour(double k_min, double k_max, std::size_t n_per_ray,
                             NodeSpacing spacing = NodeSpacing::Logarithmic);

void validate_contour(const SpectralContour& c);

}  // namespace flist
