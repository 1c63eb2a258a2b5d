#include <doctest.h>

#include <cmath>
#include <numbers>

#include "flist/errors.hpp"
#include "flist/field_core.hpp"

using namespace flist;

namespace {

SampledPotential sech_field(double lo, double hi, std::size_t n) {
  const SpatialGrid g = make_grid(lo, hi, n);
  cvec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / std::cosh(g.x(i));
  return make_potential(g, v);
}

bool raises(ErrorKind kind, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("grid arithmetic") {
  const auto g = make_grid(-10.0, 10.0, 5);
  CHECK(g.dx() == doctest::Approx(5.0));
  const auto two = make_grid(0.0, 1.0, 2).nodes();
  REQUIRE(two.size() == 2);
  CHECK(two[0] == 0.0);
  CHECK(two[1] == 1.0);
  CHECK(g.nearest(0.4) == 2);
}

TEST_CASE("inverted grid is a configuration error") {
  CHECK(raises(ErrorKind::Config, [] { make_grid(10.0, -10.0, 5); }));
  CHECK(raises(ErrorKind::Config, [] { make_grid(0.0, 1.0, 1); }));
  CHECK(raises(ErrorKind::Config, [] { make_potential(make_grid(0.0, 1.0, 3), cvec(2)); }));
}

TEST_CASE("sobolev report") {
  const auto zero = make_potential(make_grid(-5.0, 5.0, 101), cvec(101, 0.0));
  const auto z = sobolev_report(zero);
  CHECK(z.l2_norm == 0.0);
  CHECK(z.h1_norm == 0.0);
  CHECK(z.weighted_h33_estimate == 0.0);

  const auto s = sobolev_report(sech_field(-30.0, 30.0, 4096));
  CHECK(std::abs(s.l2_norm - std::sqrt(2.0)) < 1e-6);

  auto neg = sech_field(-30.0, 30.0, 4096);
  for (auto& v : neg.values) v = -std::conj(v * cd(0.3, 0.8));
  auto pos = sech_field(-30.0, 30.0, 4096);
  for (auto& v : pos.values) v = v * cd(0.3, 0.8);
  const auto a = sobolev_report(neg), b = sobolev_report(pos);
  CHECK(a.h1_norm == doctest::Approx(b.h1_norm).epsilon(1e-12));
  CHECK(a.weighted_h33_estimate == doctest::Approx(b.weighted_h33_estimate).epsilon(1e-12));

  auto bad = sech_field(-30.0, 30.0, 512);
  bad.values.back() = 1.0;
  CHECK(raises(ErrorKind::Decay, [&] { sobolev_report(bad); }));
}

TEST_CASE("grid refinement leaves l2 norm stable") {
  const double a = sobolev_report(sech_field(-30.0, 30.0, 2001)).l2_norm;
  const double b = sobolev_report(sech_field(-30.0, 30.0, 4001)).l2_norm;
  CHECK(std::abs(a - b) / b < 1e-6);
}

TEST_CASE("spectral derivative") {
  const auto zero = make_potential(make_grid(-5.0, 5.0, 64), cvec(64, 0.0));
  for (const auto& v : derivative(zero).values) CHECK(std::abs(v) == 0.0);

  // e^{ix} on a periodic-compatible grid: 64 nodes spanning 2 pi (open end).
  const std::size_t n = 64;
  const double len = 2.0 * std::numbers::pi;
  cvec e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(cd(0.0, len * double(i) / double(n)));
  const cvec de = spectral_derivative(e, len / double(n), 1);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(de[i] - cd(0.0, 1.0) * e[i]));
  CHECK(err < 1e-10);

  const auto s = sech_field(-30.0, 30.0, 4096);
  const auto ds = derivative(s);
  double es = 0.0;
  for (std::size_t i = 0; i < s.grid.n_points; ++i) {
    const double x = s.grid.x(i);
    es = std::max(es, std::abs(ds.values[i] + std::tanh(x) / std::cosh(x)));
  }
  CHECK(es < 1e-8);

  const auto fd = derivative(s, DerivativeMethod::FiniteDifference);
  double ef = 0.0;
  for (std::size_t i = 1; i + 1 < s.grid.n_points; ++i) {
    const double x = s.grid.x(i);
    ef = std::max(ef, std::abs(fd.values[i] + std::tanh(x) / std::cosh(x)));
  }
  CHECK(ef < 1e-3);
}

TEST_CASE("derivative is linear") {
  const auto u = sech_field(-30.0, 30.0, 1024);
  auto v = u;
  for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] *= std::exp(cd(0.0, 0.3 * u.grid.x(i)));
  auto w = u;
  const cd a(0.7, -0.2), b(-1.1, 0.4);
  for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = a * u.values[i] + b * v.values[i];
  const auto du = derivative(u), dv = derivative(v), dw = derivative(w);
  double err = 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i)
    err = std::max(err, std::abs(dw.values[i] - a * du.values[i] - b * dv.values[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("half-cell shifted interpolation") {
  const auto s = sech_field(-30.0, 30.0, 2048);
  const double dx = s.grid.dx();
  const cvec h = spectral_derivative(s.values, dx, 0, 0.5 * dx);
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < h.size(); ++i) err = std::max(err, std::abs(h[i] - 1.0 / std::cosh(s.grid.x(i) + 0.5 * dx)));
  CHECK(err < 1e-9);
}

TEST_CASE("contour construction") {
  const auto c = make_contour(0.05, 8.0, 100);
  CHECK(c.size() == 400);
  CHECK_NOTHROW(validate_contour(c));
  const auto nodes = c.nodes();
  CHECK(c.is_real(0));
  CHECK_FALSE(c.is_real(c.real_nodes.size()));
  CHECK(nodes[c.real_nodes.size()].real() == 0.0);
  CHECK(raises(ErrorKind::Config, [] { make_contour(0.0, 1.0, 4); }));
  SpectralContour bad;
  bad.real_nodes = {0.5, 1.0};
  bad.imag_nodes = {-0.5, 0.5};
  CHECK(raises(ErrorKind::Config, [&] { validate_contour(bad); }));
}

TEST_CASE("trapezoid and decay check") {
  std::vector<double> f(11, 1.0);
  CHECK(trapezoid(f, 0.1) == doctest::Approx(1.0));
  const auto s = sech_field(-30.0, 30.0, 301);
  CHECK_NOTHROW(check_decay(s));
  CHECK(boundary_modulus(s) < 1e-12);
  const auto t = sech_field(-5.0, 5.0, 301);
  CHECK(raises(ErrorKind::Decay, [&] { check_decay(t); }));
}
