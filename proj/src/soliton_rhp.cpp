#include "flist/soliton_rhp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "flist/errors.hpp"

namespace flist {

namespace {
constexpr cd I(0.0, 1.0);
constexpr double kLogClamp = 700.0;
}  // namespace

cd eta_squared(const FlParams& prm, cd k) {
  const cd e = k - prm.beta / (2.0 * k);
  return prm.alpha * e * e;
}

namespace {

cd log_gamma_of(const FlParams& prm, const Pole& p, double x, double t) {
  return std::log(p.c) + 2.0 * I * (p.k * p.k * x + eta_squared(prm, p.k) * t);
}

}  // namespace

std::vector<std::size_t> auto_delta(const SolitonEnsemble& ens, double x, double t, const FlParams& prm) {
  std::vector<std::size_t> d;
  const auto all = ens.expanded();
  for (std::size_t j = 0; j < all.size(); ++j)
    if (std::real(log_gamma_of(prm, all[j], x, t)) > 0.0) d.push_back(j);
  return d;
}

Mat2 MeromorphicSolution::M(cd k) const {
  Mat2 m = Mat2::Identity();
  for (const auto& p : terms) m.col(p.column) += p.residue / (k - p.point);
  return m;
}

Mat2 MeromorphicSolution::M_at_zero() const {
  Mat2 m = Mat2::Identity();
  for (const auto& p : terms) m.col(p.column) -= p.residue / p.point;
  return m;
}

Mat2 MeromorphicSolution::M_prime_at_zero() const {
  Mat2 m = Mat2::Zero();
  for (const auto& p : terms) m.col(p.column) -= p.residue / (p.point * p.point);
  return m;
}

MeromorphicSolution solve_reflectionless(const SolitonEnsemble& ens, const std::vector<std::size_t>& delta,
                                         double x, double t, const FlParams& prm) {
  MeromorphicSolution ms;
  ms.x = x;
  ms.t = t;
  ms.delta = delta;
  if (ens.empty()) return ms;
  const auto all = ens.expanded();
  const BlaschkeSplit split = blaschke_split(ens, delta);

  for (std::size_t j = 0; j < all.size(); ++j) ms.log_gamma.push_back(log_gamma_of(prm, all[j], x, t));

  for (std::size_t j = 0; j < all.size(); ++j) {
    const cd kj = all[j].k;
    const cd rate = 2.0 * I * kj * kj;  // d log gamma_j / dx
    const auto pos = std::find(split.delta_set.begin(), split.delta_set.end(), j);
    cd logc;
    int col;
    cd dlog;
    if (pos == split.delta_set.end()) {
      const cd ad = split.a_delta(kj);
      logc = ms.log_gamma[j] + 2.0 * std::log(ad);
      col = 0;
      dlog = rate;
    } else {
      const cd adp = split.a_delta_prime_at_zero(static_cast<std::size_t>(pos - split.delta_set.begin()));
      logc = -ms.log_gamma[j] - 2.0 * std::log(adp);
      col = 1;
      dlog = -rate;
    }
    if (std::real(logc) > kLogClamp)
      raise(ErrorKind::SingularSystem, "pole coefficient overflows; flip the pole into the Blaschke set");
    const cd g = std::real(logc) < -kLogClamp ? cd(0.0) : std::exp(logc);
    PoleTerm p1{kj, col, g, dlog * g, Vec2::Zero(), Vec2::Zero()};
    PoleTerm p2{std::conj(kj), 1 - col, -std::conj(g), -std::conj(dlog * g), Vec2::Zero(), Vec2::Zero()};
    ms.terms.push_back(p1);
    ms.terms.push_back(p2);
  }

  const std::size_t P = ms.terms.size();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(static_cast<long>(P), static_cast<long>(P));
  Eigen::MatrixXcd Ax = Eigen::MatrixXcd::Zero(static_cast<long>(P), static_cast<long>(P));
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(static_cast<long>(P), 2);
  Eigen::MatrixXcd Rx = Eigen::MatrixXcd::Zero(static_cast<long>(P), 2);
  for (std::size_t p = 0; p < P; ++p) {
    const auto& tp = ms.terms[p];
    const int other = 1 - tp.column;
    const long ip = static_cast<long>(p);
    R(ip, other) = tp.coeff;
    Rx(ip, other) = tp.coeff_x;
    for (std::size_t q = 0; q < P; ++q) {
      const auto& tq = ms.terms[q];
      if (tq.column != other) continue;
      const cd d = tp.point - tq.point;
      A(ip, static_cast<long>(q)) -= tp.coeff / d;
      Ax(ip, static_cast<long>(q)) -= tp.coeff_x / d;
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::MatrixXcd V = lu.solve(R);
  const Eigen::MatrixXcd Vx = lu.solve(Rx - Ax * V);
  const double scale = std::max(1.0, R.norm());
  ms.residual = (A * V - R).norm() / scale;
  if (!V.allFinite() || !Vx.allFinite() || !(ms.residual < 1e-10))
    raise(ErrorKind::SingularSystem, "pole system is singular (residual " + std::to_string(ms.residual) + ")");
  for (std::size_t p = 0; p < P; ++p) {
    ms.terms[p].residue = V.row(static_cast<long>(p)).transpose();
    ms.terms[p].residue_x = Vx.row(static_cast<long>(p)).transpose();
  }
  return ms;
}

ReconstructedField reconstruct(const MeromorphicSolution& ms, const SolitonEnsemble& ens) {
  ReconstructedField out;
  out.u_value = 0.0;
  out.u_x_value = 0.0;
  double d0 = 0.0;
  for (const auto& p : ens.representatives()) d0 += 8.0 * std::arg(p.k);
  out.d0 = d0;
  if (ens.empty()) return out;

  Mat2 M0 = ms.M_at_zero(), M1 = ms.M_prime_at_zero();
  Mat2 M0x = Mat2::Zero(), M1x = Mat2::Zero();
  for (const auto& p : ms.terms) {
    M0x.col(p.column) -= p.residue_x / p.point;
    M1x.col(p.column) -= p.residue_x / (p.point * p.point);
  }
  const Eigen::PartialPivLU<Mat2> lu(M0);
  const Mat2 Q = lu.solve(M1);
  const Mat2 Qx = lu.solve(M1x - M0x * Q);

  const BlaschkeSplit split = blaschke_split(ens, ms.delta);
  const cd ad0 = split.a_delta(0.0);
  const cd a0 = std::exp(0.5 * I * d0);
  const cd factor = ad0 * ad0 / (a0 * a0);
  out.u_value = Q(0, 1) * factor;
  out.u_x_value = Qx(0, 1) * factor;
  return out;
}

namespace {

struct OneSoliton {
  cd k;
  cd c;
};

OneSoliton single(const SolitonEnsemble& ens) {
  if (ens.n() != 1) raise(ErrorKind::WrongSolitonCount, "one-soliton formula needs exactly one pole");
  return {ens.representatives()[0].k, ens.representatives()[0].c};
}

// Returns |u| and |u_x| from the closed-form solution of the 4x4 pole system:
// u = 2 s^2 conj(g) / (conj(k)^2 (|g|^2 conj(k)^2 + s^2)), s = Im k^2.
std::pair<double, double> one_soliton_closed_form(const SolitonEnsemble& ens, double x, double t,
                                                  const FlParams& prm) {
  const auto [k, c] = single(ens);
  const cd E = std::log(c) + 2.0 * I * (k * k * x + eta_squared(prm, k) * t);
  const double h = std::exp(std::clamp(std::real(E), -kLogClamp, kLogClamp));  // |gamma|
  const double s = std::imag(k * k);
  const cd kb2 = std::conj(k * k);
  const double mod = 2.0 * s * s / (std::norm(k) * std::abs(h * kb2 + s * s / h));
  // u_x / u = -2i conj(k)^2 + 4 s |g|^2 conj(k)^2 / (|g|^2 conj(k)^2 + s^2).
  const cd tail = h >= 1.0 ? 4.0 * s * kb2 / (kb2 + s * s / (h * h)) : 4.0 * s * h * h * kb2 / (h * h * kb2 + s * s);
  const cd lam = -2.0 * I * kb2 + tail;
  return {mod, mod * std::abs(lam)};
}

}  // namespace

double one_soliton_modulus(const SolitonEnsemble& ens, double x, double t, const FlParams& prm) {
  return one_soliton_closed_form(ens, x, t, prm).first;
}

double one_soliton_envelope(const SolitonEnsemble& ens, double x, double t, const FlParams& prm) {
  return one_soliton_closed_form(ens, x, t, prm).second;
}

double one_soliton_peak(const SolitonEnsemble& ens, double t, const FlParams& prm) {
  const auto [k, c] = single(ens);
  const double s = std::imag(k * k);
  const double v = soliton_velocity(prm.alpha, prm.beta, k);
  const double rate = 2.0 * s;
  // |gamma| = s / |k|^2 sits near the core.
  const double xg = (std::log(std::abs(c)) - std::log(s / std::norm(k))) / rate + v * t;
  const double w = 4.0 / rate;
  auto f = [&](double x) { return -one_soliton_envelope(ens, x, t, prm); };
  // Coarse scan then golden-section refinement.
  double best = xg, fb = f(xg);
  for (int i = -200; i <= 200; ++i) {
    const double xs = xg + w * i / 50.0;
    const double fs = f(xs);
    if (fs < fb) {
      fb = fs;
      best = xs;
    }
  }
  double a = best - w / 50.0, b = best + w / 50.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = f(c1), f2 = f(c2);
  for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(best)); ++it) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = f(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = f(c2);
    }
  }
  return 0.5 * (a + b);
}

double one_soliton_sech_envelope(const SolitonEnsemble& ens, double x, double t, const FlParams& prm) {
  const auto [k, c] = single(ens);
  const double zeta = 2.0 * k.imag();
  const double xi = 0.5 * k.real();
  const double v = soliton_velocity(prm.alpha, prm.beta, k);
  const double delta0 = 4.0 * xi * zeta * one_soliton_peak(ens, 0.0, prm);
  return 2.0 * zeta / std::cosh(4.0 * xi * zeta * (x - v * t) - delta0);
}

SampledPotential nsoliton_field(const SolitonEnsemble& ens, const SpatialGrid& grid, double t,
                                const FlParams& prm) {
  SampledPotential out{grid, cvec(grid.n_points, 0.0), cvec(grid.n_points, 0.0)};
  if (ens.empty()) return out;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const auto ms = solve_reflectionless(ens, auto_delta(ens, x, t, prm), x, t, prm);
    const auto f = reconstruct(ms, ens);
    out.values[i] = f.u_value;
    (*out.derivative_values)[i] = f.u_x_value;
  }
  return out;
}

SampledPotential nsoliton_field(const SolitonEnsemble& ens, const std::vector<std::size_t>& delta,
                                const SpatialGrid& grid, double t, const FlParams& prm) {
  SampledPotential out{grid, cvec(grid.n_points, 0.0), cvec(grid.n_points, 0.0)};
  if (ens.empty()) return out;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const auto f = reconstruct(solve_reflectionless(ens, delta, x, t, prm), ens);
    out.values[i] = f.u_value;
    (*out.derivative_values)[i] = f.u_x_value;
  }
  return out;
}

}  // namespace flist
