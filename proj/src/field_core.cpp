#include "flist/field_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flist/errors.hpp"
#include "flist/fft.hpp"

namespace flist {

std::vector<double> SpatialGrid::nodes() const {
  std::vector<double> xs(n_points);
  for (std::size_t i = 0; i < n_points; ++i) xs[i] = x(i);
  return xs;
}

std::size_t SpatialGrid::nearest(double xv) const {
  const double s = std::round((xv - x_min) / dx());
  if (s <= 0.0) return 0;
  const auto idx = static_cast<std::size_t>(s);
  return std::min(idx, n_points - 1);
}

SpatialGrid make_grid(double x_min, double x_max, std::size_t n) {
  if (n < 2) raise(ErrorKind::Config, "grid needs at least 2 points");
  if (!(x_min < x_max)) raise(ErrorKind::Config, "grid bounds inverted or empty");
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) raise(ErrorKind::Config, "grid bounds not finite");
  return SpatialGrid{x_min, x_max, n};
}

SampledPotential make_potential(const SpatialGrid& grid, cvec values) {
  if (values.size() != grid.n_points)
    raise(ErrorKind::Config, "potential has " + std::to_string(values.size()) +
                                 " samples, grid has " + std::to_string(grid.n_points));
  return SampledPotential{grid, std::move(values), std::nullopt};
}

namespace {
cd ipow(cd z, int order) {
  cd r(1.0, 0.0);
  for (int i = 0; i < order; ++i) r *= z;
  return r;
}
}  // namespace

cvec spectral_derivative(const cvec& values, double dx, int order, double shift) {
  const std::size_t n = values.size();
  Fft fft(n);
  cvec hat = fft.forward(values);
  const auto kap = wavenumbers(n, dx);
  const bool has_nyquist = (n % 2 == 0);
  for (std::size_t j = 0; j < n; ++j) {
    const cd ik(0.0, kap[j]);
    cd factor = ipow(ik, order) * std::exp(ik * shift);
    if (has_nyquist && j == n / 2) {
      // Average the two aliased branches so real input stays real.
      const cd m(0.0, -kap[j]);
      const cd a = ipow(ik, order) * std::exp(ik * shift);
      const cd b = ipow(m, order) * std::exp(m * shift);
      factor = 0.5 * (a + b);
    }
    hat[j] *= factor;
  }
  return fft.inverse(hat);
}

namespace {

cvec finite_difference(const cvec& v, double dx) {
  const std::size_t n = v.size();
  cvec d(n);
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = (i == 0) ? 0 : i - 1;
      const std::size_t hi = (i + 1 == n) ? i : i + 1;
      d[i] = (v[hi] - v[lo]) / (dx * static_cast<double>(hi - lo));
    }
    return d;
  }
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-v[i + 2] + 8.0 * v[i + 1] - 8.0 * v[i - 1] + v[i - 2]) / (12.0 * dx);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dx);
  d[1] = (v[2] - v[0]) / (2.0 * dx);
  d[n - 2] = (v[n - 1] - v[n - 3]) / (2.0 * dx);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * dx);
  return d;
}

}  // namespace

SampledPotential derivative(const SampledPotential& u, DerivativeMethod method) {
  SampledPotential out{u.grid, {}, std::nullopt};
  if (method == DerivativeMethod::Spectral)
    out.values = spectral_derivative(u.values, u.grid.dx(), 1);
  else
    out.values = finite_difference(u.values, u.grid.dx());
  return out;
}

double boundary_modulus(const SampledPotential& u) {
  if (u.values.empty()) return 0.0;
  return std::max(std::abs(u.values.front()), std::abs(u.values.back()));
}

void check_decay(const SampledPotential& u, double decay_tol) {
  const double m = boundary_modulus(u);
  if (!(m < decay_tol))
    raise(ErrorKind::Decay, "boundary modulus " + std::to_string(m) + " exceeds decay_tol " +
                                std::to_string(decay_tol));
}

double trapezoid(const std::vector<double>& f, double dx) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * dx;
}

SobolevReport sobolev_report(const SampledPotential& u, double decay_tol) {
  check_decay(u, decay_tol);
  const double dx = u.grid.dx();
  const std::size_t n = u.values.size();
  std::vector<double> f(n);

  auto norm2 = [&](const cvec& v) {
    for (std::size_t i = 0; i < n; ++i) f[i] = std::norm(v[i]);
    return trapezoid(f, dx);
  };

  SobolevReport rep;
  const double m0 = norm2(u.values);
  const cvec d1 = spectral_derivative(u.values, dx, 1);
  const cvec d2 = spectral_derivative(u.values, dx, 2);
  const cvec d3 = spectral_derivative(u.values, dx, 3);
  const double m1 = norm2(d1);
  const double m2 = norm2(d2);
  const double m3 = norm2(d3);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u.grid.x(i);
    f[i] = std::pow(1.0 + x * x, 3.0) * std::norm(u.values[i]);
  }
  const double w = trapezoid(f, dx);
  rep.l2_norm = std::sqrt(m0);
  rep.h1_norm = std::sqrt(m0 + m1);
  rep.weighted_h33_estimate = std::sqrt(m0 + m1 + m2 + m3 + w);
  return rep;
}

cvec SpectralContour::nodes() const {
  cvec k;
  k.reserve(size());
  for (double r : real_nodes) k.emplace_back(r, 0.0);
  for (double s : imag_nodes) k.emplace_back(0.0, s);
  return k;
}

SpectralContour make_contour(double k_min, double k_max, std::size_t n_per_ray, NodeSpacing spacing) {
  if (!(k_min > 0.0) || !(k_max > k_min)) raise(ErrorKind::Config, "contour needs 0 < k_min < k_max");
  if (n_per_ray < 1) raise(ErrorKind::Config, "contour needs at least one node per ray");
  std::vector<double> ray(n_per_ray);
  for (std::size_t j = 0; j < n_per_ray; ++j) {
    const double s = n_per_ray == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(n_per_ray - 1);
    ray[j] = spacing == NodeSpacing::Linear ? k_min + s * (k_max - k_min)
                                            : k_min * std::pow(k_max / k_min, s);
  }
  std::vector<double> full;
  full.reserve(2 * n_per_ray);
  for (auto it = ray.rbegin(); it != ray.rend(); ++it) full.push_back(-*it);
  for (double r : ray) full.push_back(r);
  return SpectralContour{full, full};
}

void validate_contour(const SpectralContour& c) {
  auto check = [](const std::vector<double>& v, const char* which) {
    for (double r : v) {
      if (r == 0.0) raise(ErrorKind::Config, std::string(which) + " nodes contain k = 0");
      if (!std::isfinite(r)) raise(ErrorKind::Config, std::string(which) + " nodes not finite");
    }
    std::vector<double> s(v);
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::abs(s[i] + s[s.size() - 1 - i]) > 1e-12 * (1.0 + std::abs(s[i])))
        raise(ErrorKind::Config, std::string(which) + " nodes not symmetric under k -> -k");
  };
  check(c.real_nodes, "real");
  check(c.imag_nodes, "imaginary");
}

}  // namespace flist
