#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "flist/errors.hpp"
#include "flist/soliton_rhp.hpp"
#include "flist/spectrum_trace.hpp"

using namespace flist;

namespace {

constexpr cd I(0.0, 1.0);
const double kPi = std::numbers::pi;

bool raises(ErrorKind kind, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

SolitonEnsemble diag_pole() { return SolitonEnsemble({{std::polar(1.0, kPi / 4.0), 1.0}}); }

// Smooth synthetic reflection data on both axes, |r| < 1.
ReflectionSamples synthetic_r() {
  std::vector<double> ks, ss;
  cvec rr, ri;
  for (int i = 1; i <= 200; ++i) {
    const double k = 0.02 * i;
    for (double s : {1.0, -1.0}) {
      ks.push_back(s * k);
      rr.push_back(s * 0.4 * k * std::exp(-k * k) * cd(1.0, 0.5));
      ss.push_back(s * k);
      ri.push_back(s * 0.3 * k * std::exp(-k * k) * cd(0.2, 1.0));
    }
  }
  return ReflectionSamples(ks, rr, ss, ri);
}

}  // namespace

TEST_CASE("trace formula") {
  const SolitonEnsemble empty;
  CHECK(std::abs(trace_formula_a(empty, cd(0.3, 0.2)) - 1.0) == 0.0);
  const auto ens = diag_pole();
  for (cd k : {cd(0.3, 0.1), cd(2.0, 0.0), cd(0.0, 0.7), cd(-1.2, 0.4)})
    CHECK(std::abs(trace_formula_a(ens, k) - (k * k - I) / (k * k + I)) < 1e-14);
  CHECK(std::abs(trace_formula_a(ens, cd(1e8, 0.0)) - 1.0) < 1e-14);
  CHECK(std::abs(trace_formula_a(ens, cd(0.0)) + 1.0) < 1e-14);
  for (double k : {-3.0, -0.5, 0.2, 1.0, 7.0}) CHECK(std::abs(std::abs(trace_formula_a(ens, k)) - 1.0) < 1e-14);
  CHECK(raises(ErrorKind::PoleHit, [&] { trace_formula_a(ens, std::conj(ens.representatives()[0].k)); }));
}

TEST_CASE("partial Blaschke products") {
  const SolitonEnsemble ens({{cd(0.8, 0.5), cd(1.0, 0.0)}, {cd(0.3, 1.2), cd(0.5, 0.5)}});
  const cd k(0.4, -0.7);
  CHECK(std::abs(blaschke_split(ens, {}).a_delta(k) - 1.0) == 0.0);
  CHECK(std::abs(blaschke_split(ens, {0, 1, 2, 3}).a_delta(k) - trace_formula_a(ens, k)) < 1e-14);

  const auto one = diag_pole();
  const auto d = blaschke_split(one, {0}), dc = blaschke_split(one, {1});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cd z(u(rng), u(rng));
    err = std::max(err, std::abs(d.a_delta(z) * dc.a_delta(z) - trace_formula_a(one, z)));
  }
  CHECK(err < 1e-12);
  for (double x : {-2.0, 0.3, 5.0}) CHECK(std::abs(std::abs(d.a_delta(x)) - 1.0) < 1e-14);

  // Derivative at an own zero by finite differences.
  const double h = 1e-6;
  const cd z0 = d.zeros[0];
  const cd fd = (d.a_delta(z0 + h) - d.a_delta(z0 - h)) / (2.0 * h);
  CHECK(std::abs(fd - d.a_delta_prime_at_zero(0)) < 1e-8);
  CHECK(raises(ErrorKind::Config, [&] { blaschke_split(one, {0, 0}); }));
  CHECK(raises(ErrorKind::Config, [&] { blaschke_split(one, {2}); }));
}

TEST_CASE("delta exponential") {
  const ReflectionSamples none(std::vector<double>{0.5, -0.5}, cvec{0.0, 0.0}, {}, {});
  CHECK(std::abs(delta_exponential(none, inner_cross(1.0), 1, cd(0.3, 0.4)) - 1.0) == 0.0);

  // r = 0.5 on [1, 2]: the integral of 1/(zeta - 3) over [1, 2] is -log 2.
  std::vector<double> ks;
  cvec rs;
  for (int i = 0; i <= 20; ++i) {
    ks.push_back(1.0 + 0.05 * i);
    rs.push_back(0.5);
  }
  const ReflectionSamples half(ks, rs, {}, {});
  const std::vector<ContourPiece> seg{{cd(1.0), cd(2.0)}};
  const cd want = std::exp(1.0 / (kPi * I) * std::log(1.25) * -std::log(2.0));
  CHECK(std::abs(delta_exponential(half, seg, 1, cd(3.0)) - want) < 1e-13);

  const auto r = synthetic_r();
  const auto pieces = inner_cross(1.5);
  for (cd k : {cd(0.9, 0.6), cd(0.4, 1.3), cd(-0.7, 0.2)}) {
    const cd v = delta_exponential(r, pieces, 1, k);
    const cd w = delta_exponential(r, pieces, 1, std::conj(k));
    CHECK(std::abs(w - 1.0 / std::conj(v)) < 1e-12);
    const cd s = delta_exponential(r, pieces, -1, k);
    CHECK(std::abs(s * v - 1.0) < 1e-12);
  }
  CHECK(raises(ErrorKind::ContourProximity, [&] { delta_exponential(r, pieces, 1, cd(0.5, 0.001)); }));
}

TEST_CASE("delta exponential is smooth in k") {
  const auto r = synthetic_r();
  const auto pieces = inner_cross(1.5);
  const cd k(0.8, 0.7);
  const double h = 1e-5;
  const cd fd = (cauchy_integral(r, pieces, k + h) - cauchy_integral(r, pieces, k - h)) / (2.0 * h);
  // Kernel derivative int L/(zeta-k)^2 by dense midpoint quadrature.
  cd kern = 0.0;
  for (const auto& p : pieces) {
    const int n = 200000;
    const cd d = (p.end - p.start) / double(n);
    for (int i = 0; i < n; ++i) {
      const cd z = p.start + (i + 0.5) * d;
      kern += r.L_at(p.start.imag() == 0.0 && p.end.imag() == 0.0 ? cd(z.real(), 0.0) : cd(0.0, z.imag())) /
              ((z - k) * (z - k)) * d;
    }
  }
  CHECK(std::abs(fd - kern) < 1e-4);
}

TEST_CASE("regularized delta at a contour point") {
  const auto r = synthetic_r();
  const auto pieces = inner_cross(1.0);
  const cd z(1.0, 0.0);
  const double Lz = r.L_at(z);
  // Oracle: the bounded integrand (L - L(z))/(zeta - z) on the touching piece,
  // plain Cauchy kernel elsewhere; the far endpoints all sit at distance 1.
  cd total = 0.0;
  for (const auto& p : pieces) {
    const bool touch = p.end == z || p.start == z;
    const bool re = p.start.imag() == 0.0 && p.end.imag() == 0.0;
    const int n = 200000;
    const cd d = (p.end - p.start) / double(n);
    for (int i = 0; i < n; ++i) {
      const cd q = p.start + (i + 0.5) * d;
      const double L = re ? r.L_real(q.real()) : r.L_imag(q.imag());
      total += (L - (touch ? Lz : 0.0)) / (q - z) * d;
    }
  }
  const cd want = std::exp(total / (2.0 * kPi * I));
  CHECK(std::abs(delta_regularized(r, pieces, z) - want) < 1e-6);
}

TEST_CASE("zero finding on the rational oracle") {
  const auto ens = diag_pole();
  const std::function<cd(cd)> a = [&](cd k) { return trace_formula_a(ens, k); };
  const auto z = find_zeros(a, {0.2, 1.5, 0.2, 1.5});
  REQUIRE(z.size() == 1);
  CHECK(std::abs(z[0] - std::polar(1.0, kPi / 4.0)) < 1e-10);
  const double w = winding_number(a, {0.2, 1.5, 0.2, 1.5});
  CHECK(std::abs(w - 1.0) < 0.1);
  CHECK(find_zeros(a, {1.2, 2.0, 1.2, 2.0}).empty());
  CHECK(std::abs(winding_number(a, {1.2, 2.0, 1.2, 2.0})) < 0.1);

  const cd k1(0.7, 0.6);
  const std::function<cd(cd)> dbl = [&](cd k) { return (k - k1) * (k - k1); };
  CHECK(raises(ErrorKind::MultipleZero, [&] { find_zeros(dbl, {0.2, 1.5, 0.2, 1.5}); }));
  CHECK(raises(ErrorKind::Config, [&] { find_zeros(a, {1.0, 1.0, 0.0, 1.0}); }));
}

TEST_CASE("discrete spectrum of sampled potentials") {
  const auto zero = make_potential(make_grid(-10.0, 10.0, 1001), cvec(1001, 0.0));
  CHECK(find_discrete_spectrum(zero, {0.2, 1.5, 0.2, 1.5}).empty());
  CHECK(raises(ErrorKind::Config, [&] { find_discrete_spectrum(zero, {-1.0, 1.0, 0.2, 1.0}); }));
  CHECK(raises(ErrorKind::Config, [&] { find_discrete_spectrum(zero, {0.0, 1.0, 0.0, 1.0}); }));

  const auto ens = diag_pole();
  const auto g = make_grid(-25.0, 25.0, 5001);
  const auto u = make_potential(g, nsoliton_field(ens, g, 0.0).values);
  const auto found = find_discrete_spectrum(u, {0.3, 1.5, 0.3, 1.5});
  REQUIRE(found.n() == 1);
  CHECK(std::abs(found.representatives()[0].k - ens.representatives()[0].k) < 1e-4);
  CHECK(std::abs(found.representatives()[0].c - 1.0) < 1e-4);
}

TEST_CASE("reflection samples") {
  const auto r = synthetic_r();
  CHECK_FALSE(r.vanishes());
  CHECK(r.L_at(cd(0.0)) == 0.0);
  CHECK(r.L_at(cd(10.0, 0.0)) == 0.0);
  CHECK(std::abs(r.r_at(cd(0.5, 0.0)) - 0.4 * 0.5 * std::exp(-0.25) * cd(1.0, 0.5)) < 1e-12);
  CHECK(r.L_imag(0.5) < 0.0);
  CHECK(r.L_real(0.5) > 0.0);
  CHECK(raises(ErrorKind::Config, [&] { r.L_at(cd(0.3, 0.3)); }));
  CHECK(raises(ErrorKind::Config, [] { ReflectionSamples({}, {}, std::vector<double>{0.5}, cvec{1.0}); }));
}
