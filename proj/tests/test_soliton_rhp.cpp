#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "flist/direct_scattering.hpp"
#include "flist/errors.hpp"
#include "flist/soliton_rhp.hpp"
#include "flist/spectrum_trace.hpp"

using namespace flist;

namespace {

constexpr cd I(0.0, 1.0);
const double kPi = std::numbers::pi;

SolitonEnsemble one() { return SolitonEnsemble({{std::polar(1.0, kPi / 4.0), 1.0}}); }
SolitonEnsemble two() { return SolitonEnsemble({{cd(0.9, 0.6), 1.0}, {cd(0.5, 1.1), cd(0.7, -0.3)}}); }

Mat2 sigma2_conj(const Mat2& m) {
  Mat2 s;
  s << std::conj(m(1, 1)), -std::conj(m(1, 0)), -std::conj(m(0, 1)), std::conj(m(0, 0));
  return s;
}

double dist(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("velocity") {
  CHECK(std::abs(soliton_velocity(1.0, 2.0, std::polar(1.0, 0.3))) < 1e-15);
  CHECK(std::abs(soliton_velocity(1.0, 2.0, cd(1e4, 1e4)) + 1.0) < 1e-12);
  CHECK(soliton_velocity(1.0, 2.0, std::polar(1.2, 0.3)) < 0.0);
  CHECK(soliton_velocity(1.0, 2.0, std::polar(0.8, 0.3)) > 0.0);
}

TEST_CASE("eta squared") {
  const FlParams prm;
  CHECK(std::abs(eta_squared(prm, cd(1.0, 0.0))) < 1e-15);
  const cd k(0.4, 0.9);
  CHECK(std::abs(eta_squared(prm, k) - (k - 1.0 / k) * (k - 1.0 / k)) < 1e-14);
}

TEST_CASE("pole system: det M, symmetries, normalization") {
  const auto ens = two();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double x : {-1.5, 0.0, 2.0}) {
    const auto ms = solve_reflectionless(ens, auto_delta(ens, x, 0.7, {}), x, 0.7);
    CHECK(ms.residual < 1e-12);
    for (int i = 0; i < 5; ++i) {
      const cd k(u(rng), u(rng));
      const Mat2 m = ms.M(k);
      CHECK(std::abs(m.determinant() - 1.0) < 1e-8);
      CHECK(dist(ms.M(std::conj(k)), sigma2_conj(m)) < 1e-8);
      Mat2 s3 = m;
      s3(0, 1) = -s3(0, 1);
      s3(1, 0) = -s3(1, 0);
      CHECK(dist(ms.M(-k), s3) < 1e-8);
      CHECK(m.cwiseAbs().maxCoeff() < 1e6);
      CHECK(m.inverse().cwiseAbs().maxCoeff() < 1e6);
    }
    CHECK(dist(ms.M(cd(1e7, 3e6)), Mat2::Identity()) < 1e-5);
  }
}

TEST_CASE("one-soliton det M(2) = 1 at the origin") {
  const auto ms = solve_reflectionless(one(), {}, 0.0, 0.0);
  CHECK(std::abs(ms.M(2.0).determinant() - 1.0) < 1e-10);
}

TEST_CASE("far right the dressing vanishes") {
  const auto ens = one();
  const auto ms = solve_reflectionless(ens, {}, 40.0, 0.0);
  CHECK(dist(ms.M(cd(0.3, 0.2)), Mat2::Identity()) < 1e-12);
  CHECK(std::abs(reconstruct(ms, ens).u_value) < 1e-12);
}

TEST_CASE("empty ensemble gives the zero field") {
  const auto g = make_grid(-5.0, 5.0, 51);
  for (const auto& v : nsoliton_field(SolitonEnsemble{}, g, 1.0).values) CHECK(v == cd(0.0));
}

TEST_CASE("gauge choice leaves |u| unchanged") {
  const auto ens = two();
  const std::vector<std::size_t> all{0, 1, 2, 3};
  double err = 0.0;
  for (double x = -4.0; x <= 4.0; x += 0.5) {
    const double a = std::abs(reconstruct(solve_reflectionless(ens, {}, x, 0.3), ens).u_value);
    const double b = std::abs(reconstruct(solve_reflectionless(ens, all, x, 0.3), ens).u_value);
    const double c = std::abs(reconstruct(solve_reflectionless(ens, {0, 3}, x, 0.3), ens).u_value);
    err = std::max({err, std::abs(a - b), std::abs(a - c)});
  }
  CHECK(err < 1e-10);
}

TEST_CASE("one-soliton field matches the closed-form modulus") {
  const auto g = make_grid(-15.0, 15.0, 601);
  for (const auto& ens : {one(), SolitonEnsemble({{std::polar(1.1, 0.6), cd(0.8, 0.4)}})}) {
    for (double t : {0.0, 1.5}) {
      const auto f = nsoliton_field(ens, g, t);
      double err = 0.0, errx = 0.0;
      for (std::size_t i = 0; i < g.n_points; ++i) {
        err = std::max(err, std::abs(std::abs(f.values[i]) - one_soliton_modulus(ens, g.x(i), t)));
        errx = std::max(errx, std::abs(std::abs((*f.derivative_values)[i]) - one_soliton_envelope(ens, g.x(i), t)));
      }
      CHECK(err < 1e-8);
      CHECK(errx < 1e-8);
    }
  }
  CHECK_THROWS_AS(one_soliton_modulus(two(), 0.0, 0.0), Error);
}

TEST_CASE("peak travels at the soliton velocity") {
  const SolitonEnsemble ens({{std::polar(1.1, kPi / 4.0), 1.0}});
  const double v = soliton_velocity(1.0, 2.0, ens.representatives()[0].k);
  const double p0 = one_soliton_peak(ens, 2.0), p1 = one_soliton_peak(ens, 2.5);
  CHECK(std::abs(p1 - p0 - 0.5 * v) < 1e-8);
  CHECK(std::abs(one_soliton_sech_envelope(ens, one_soliton_peak(ens, 0.0), 0.0) -
                 4.0 * ens.representatives()[0].k.imag()) < 1e-12);
}

TEST_CASE("translation covariance") {
  const cd k = std::polar(1.0, kPi / 4.0);
  const double s = 1.3;
  const SolitonEnsemble a({{k, 1.0}}), b({{k, std::exp(2.0 * I * k * k * s)}});
  for (double x : {-2.0, 0.0, 1.5}) {
    const double ua = std::abs(reconstruct(solve_reflectionless(a, {}, x, 0.0), a).u_value);
    const double ub = std::abs(reconstruct(solve_reflectionless(b, {}, x - s, 0.0), b).u_value);
    CHECK(std::abs(ua - ub) < 1e-10);
  }
}

TEST_CASE("round trip through direct scattering") {
  const auto ens = one();
  const auto g = make_grid(-25.0, 25.0, 5001);
  const auto u = make_potential(g, nsoliton_field(ens, g, 0.0).values);
  const auto found = find_discrete_spectrum(u, {0.3, 1.5, 0.3, 1.5});
  REQUIRE(found.n() == 1);
  CHECK(std::abs(found.representatives()[0].k - ens.representatives()[0].k) < 1e-4);
}
