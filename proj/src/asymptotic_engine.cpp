#include "flist/asymptotic_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flist/complex_gamma.hpp"
#include "flist/errors.hpp"

namespace flist {

namespace {
constexpr cd I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
}  // namespace

cd phase(cd k, const PhaseGeometry& geo) {
  if (k == cd(0.0)) raise(ErrorKind::OriginSingularity, "theta is singular at k = 0");
  const double ab2 = geo.alpha * geo.beta * geo.beta;
  return k * k * geo.xi - geo.alpha * geo.beta + ab2 / (4.0 * k * k);
}

cd phase_derivative(cd k, const PhaseGeometry& geo) {
  if (k == cd(0.0)) raise(ErrorKind::OriginSingularity, "theta is singular at k = 0");
  const double ab2 = geo.alpha * geo.beta * geo.beta;
  return 2.0 * k * geo.xi - ab2 / (2.0 * k * k * k);
}

PhaseGeometry stationary_points(double alpha, double beta, double xi, double k0_floor) {
  if (!(alpha > 0.0) || !(beta > 0.0)) raise(ErrorKind::Config, "alpha and beta must be positive");
  if (!(xi > 0.0)) raise(ErrorKind::DegenerateCone, "xi = x/t + alpha must be positive");
  PhaseGeometry g;
  g.alpha = alpha;
  g.beta = beta;
  g.xi = xi;
  g.k0 = std::pow(alpha * beta * beta / (4.0 * xi), 0.25);
  if (g.k0 < k0_floor) raise(ErrorKind::DegenerateCone, "stationary points collapse onto the origin");
  g.z = {cd(g.k0, 0.0), cd(0.0, g.k0), cd(-g.k0, 0.0), cd(0.0, -g.k0)};
  g.nu = {0.0, 0.0, 0.0, 0.0};
  return g;
}

double nu_at(const ReflectionSamples& r, cd z) { return -r.L_at(z) / (2.0 * kPi); }

void attach_nu(PhaseGeometry& geo, const ReflectionSamples& r) {
  for (std::size_t n = 0; n < 4; ++n) geo.nu[n] = nu_at(r, geo.z[n]);
}

double cone_radius(double alpha, double beta, double v) {
  if (!(v > -alpha)) raise(ErrorKind::DegenerateCone, "velocity must exceed -alpha");
  return std::pow(alpha * beta * beta / (4.0 * (v + alpha)), 0.25);
}

ConeSelection cone_select(const SolitonEnsemble& ens, const ReflectionSamples& r, const Cone& cone, double alpha,
                          double beta) {
  if (!(cone.v1 > -alpha)) raise(ErrorKind::DegenerateCone, "v1 must exceed -alpha");
  if (!(cone.v1 <= cone.v2) || !(cone.v2 < 0.0)) raise(ErrorKind::Config, "cone needs -alpha < v1 <= v2 < 0");
  if (!(cone.x1 <= cone.x2)) raise(ErrorKind::Config, "cone needs x1 <= x2");
  ConeSelection sel;
  sel.cone = cone;
  sel.inner_radius = cone_radius(alpha, beta, cone.v2);
  sel.outer_radius = cone_radius(alpha, beta, cone.v1);
  const auto& reps = ens.representatives();
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const double m = std::abs(reps[j].k);
    if (m > sel.outer_radius)
      sel.K_plus.push_back(j);
    else if (m < sel.inner_radius)
      sel.K_minus.push_back(j);
    else
      sel.K_in.push_back(j);
  }
  sel.N_I = sel.K_in.size();
  const auto pieces = inner_cross(sel.inner_radius);
  std::vector<Pole> kept;
  for (std::size_t j : sel.K_in) {
    const cd kj = reps[j].k;
    cd c = reps[j].c;
    for (std::size_t n : sel.K_minus) {
      for (const cd kn : {reps[n].k, -reps[n].k}) {
        const cd f = (kj - kn) / (kj - std::conj(kn));
        c *= f * f;
      }
    }
    c *= delta_exponential(r, pieces, -1, kj);
    sel.c_modified.push_back(c);
    kept.push_back(Pole{kj, c});
  }
  sel.in_ensemble = SolitonEnsemble(kept);
  return sel;
}

PCCoefficients pc_coefficients(cd r_at_z, double nu, cd delta_at_z, double k0, double t, double alpha, double beta,
                               bool on_imaginary_axis) {
  if (!std::isfinite(nu)) raise(ErrorKind::Config, "nu must be finite");
  if (std::abs(nu) > 50.0) raise(ErrorKind::GammaOverflow, "|nu| > 50");
  PCCoefficients pc;
  pc.nu = nu;
  const double ab2 = alpha * beta * beta;
  const double theta_z = on_imaginary_axis ? -ab2 / (2.0 * k0 * k0) - alpha * beta : ab2 / (2.0 * k0 * k0) - alpha * beta;
  pc.r0 = r_at_z / (delta_at_z * delta_at_z) *
          std::exp(I * nu * (std::log(std::pow(k0, 4.0)) - std::log(4.0 * ab2 * t))) * std::exp(2.0 * I * t * theta_z);
  if (r_at_z == cd(0.0)) {
    pc.beta12 = pc.beta21 = 0.0;
    return pc;
  }
  const double pre = std::sqrt(2.0 * kPi) * std::exp(-kPi * nu / 2.0);
  pc.beta12 = pre * std::exp(I * (kPi / 4.0)) * reciprocal_gamma(cd(0.0, -nu)) / pc.r0;
  pc.beta21 = -pre * std::exp(-I * (kPi / 4.0)) * reciprocal_gamma(cd(0.0, nu)) / std::conj(pc.r0);
  pc.m1_norm = std::max(std::abs(pc.beta12), std::abs(pc.beta21));
  return pc;
}

LeadingAsymptotic leading_asymptotic(const ConeSelection& sel, const ReflectionSamples& r, double alpha, double beta,
                                     double x, double t, double t_min) {
  if (!(t > 0.0)) raise(ErrorKind::OutsideCone, "cone evaluation needs t > 0");
  const Cone& c = sel.cone;
  const double lo = c.x1 + c.v1 * t, hi = c.x2 + c.v2 * t;
  if (x < lo || x > hi) raise(ErrorKind::OutsideCone, "(x, t) lies outside the cone");
  LeadingAsymptotic out;
  out.pre_asymptotic = t < t_min;
  out.geometry = stationary_points(alpha, beta, x / t + alpha);
  attach_nu(out.geometry, r);
  const FlParams prm{alpha, beta};
  if (!sel.in_ensemble.empty()) {
    const auto ms = solve_reflectionless(sel.in_ensemble, auto_delta(sel.in_ensemble, x, t, prm), x, t, prm);
    const auto f = reconstruct(ms, sel.in_ensemble);
    out.u_lead = f.u_value;
    out.u_x_lead = f.u_x_value;
  }
  if (r.vanishes()) return out;
  const double k0 = out.geometry.k0;
  const auto pieces = inner_cross(k0);
  double sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    const cd z = out.geometry.z[n];
    const bool imag_axis = (n % 2) == 1;
    out.pc[n] = pc_coefficients(r.r_at(z), out.geometry.nu[n], delta_regularized(r, pieces, z), k0, t, alpha, beta,
                                imag_axis);
    sum += out.pc[n].m1_norm;
  }
  out.correction_bound = k0 * k0 / (2.0 * beta * std::sqrt(alpha * t)) * sum;
  return out;
}

LeadingAsymptotic leading_asymptotic(const SolitonEnsemble& ens, const ReflectionSamples& r, const Cone& cone,
                                     double alpha, double beta, double x, double t, double t_min) {
  return leading_asymptotic(cone_select(ens, r, cone, alpha, beta), r, alpha, beta, x, t, t_min);
}

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) raise(ErrorKind::InsufficientSamples, "need at least 4 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second > 0.0) || !(samples[i].first > 0.0))
      raise(ErrorKind::InsufficientSamples, "times and residuals must be positive");
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      raise(ErrorKind::InsufficientSamples, "times must increase");
  }
  std::vector<double> ts, rs;
  for (const auto& [t, res] : samples) {
    ts.push_back(t);
    rs.push_back(res);
  }
  const auto [s, b] = loglog_fit(ts, rs);
  return {s, b};
}

std::vector<ResolutionRow> resolution_study(const SampledPotential& u0, const SolitonEnsemble& ens,
                                            const ReflectionSamples& r, const Cone& cone, const EvolverConfig& cfg,
                                            const std::vector<double>& times) {
  if (times.empty()) raise(ErrorKind::InsufficientSamples, "no sample times");
  EvolverConfig c = cfg;
  c.t_end = *std::max_element(times.begin(), times.end());
  c.snapshot_times = times;
  const auto run = evolve(u0, c);
  const ConeSelection sel = cone_select(ens, r, cone, cfg.alpha, cfg.beta);
  std::vector<ResolutionRow> rows;
  std::vector<std::pair<double, double>> acc;
  for (double t : times) {
    const Snapshot* snap = nullptr;
    for (const auto& s : run.snapshots)
      if (std::abs(s.t - t) < 0.5 * std::abs(cfg.dt)) snap = &s;
    if (snap == nullptr) raise(ErrorKind::Config, "snapshot missing for t = " + std::to_string(t));
    const auto& g = snap->u.grid;
    double res = 0.0, bound = 0.0;
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double x = g.x(i);
      if (x < cone.x1 + cone.v1 * t || x > cone.x2 + cone.v2 * t) continue;
      const auto la = leading_asymptotic(sel, r, cfg.alpha, cfg.beta, x, t);
      res = std::max(res, std::abs(std::abs(snap->u.values[i]) - std::abs(la.u_lead)));
      bound = std::max(bound, la.correction_bound);
    }
    acc.emplace_back(t, res);
    double running = 0.0;
    if (acc.size() >= 2) {
      std::vector<double> ts, rs;
      for (const auto& [a, b] : acc) {
        ts.push_back(a);
        rs.push_back(b);
      }
      running = loglog_fit(ts, rs).first;
    }
    rows.push_back({t, res, bound, running});
  }
  return rows;
}

}  // namespace flist
