#include "flist/pde_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flist/errors.hpp"
#include "flist/fft.hpp"

namespace flist {

namespace {
constexpr cd I(0.0, 1.0);
}

std::pair<double, double> conserved_functionals(const SampledPotential& u) {
  const std::size_t n = u.values.size();
  if (n < 2) return {0.0, 0.0};
  const double dx = u.grid.dx();
  const cvec ux = spectral_derivative(u.values, dx, 1);
  std::vector<double> m(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = std::norm(u.values[i]);
    d[i] = std::norm(ux[i]);
  }
  return {trapezoid(m, dx), trapezoid(d, dx)};
}

double stiffness_estimate(const SampledPotential& u, const EvolverConfig& cfg) {
  const cvec ux = spectral_derivative(u.values, u.grid.dx(), 1);
  double peak = 0.0;
  std::vector<double> prod(u.values.size());
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    peak = std::max(peak, std::norm(u.values[i]));
    prod[i] = std::abs(u.values[i]) * std::abs(ux[i]);
  }
  return cfg.alpha * cfg.beta * cfg.beta * (peak + trapezoid(prod, u.grid.dx()) / (2.0 * std::numbers::pi));
}

namespace {

class Stepper {
public:
  Stepper(const SpatialGrid& g, const EvolverConfig& cfg)
      : cfg_(cfg), n_(g.n_points), fft_(g.n_points), kap_(wavenumbers(g.n_points, g.dx())),
        lin_(n_), gain_(n_, 0.0), mask_(n_, 0.0), u_(n_), ux_(n_), work_(n_), hat_(n_) {
    double kmax = 0.0;
    for (double k : kap_) kmax = std::max(kmax, std::abs(k));
    for (std::size_t j = 0; j < n_; ++j) {
      const double k = kap_[j];
      mask_[j] = std::abs(k) <= cfg.dealias_fraction * kmax ? 1.0 : 0.0;
      if (k != 0.0) {
        lin_[j] = I * cfg.alpha * (k + cfg.beta) * (k + cfg.beta) / k;
        gain_[j] = cfg.alpha * cfg.beta * cfg.beta / k;
      }
    }
    const double dt = cfg.dt;
    E_.resize(n_);
    E2_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      E_[j] = std::exp(lin_[j] * dt);
      E2_[j] = std::exp(lin_[j] * dt / 2.0);
    }
  }

  // FT(|u|^2 u_x) (unmasked) for the spectral state U.
  const cvec& nonlinear_hat(const cvec& U) {
    fft_.inverse(U.data(), u_.data());
    for (std::size_t j = 0; j < n_; ++j) work_[j] = I * kap_[j] * U[j];
    fft_.inverse(work_.data(), ux_.data());
    for (std::size_t j = 0; j < n_; ++j) work_[j] = std::norm(u_[j]) * ux_[j];
    fft_.forward(work_.data(), hat_.data());
    return hat_;
  }

  cvec rhs(const cvec& U) {
    const cvec& h = nonlinear_hat(U);
    cvec out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = gain_[j] * mask_[j] * h[j];
    return out;
  }

  void fix_zero_mode(cvec& U) {
    if (cfg_.zero_mode == ZeroModePolicy::ProjectOut) {
      U[0] = 0.0;
      return;
    }
    // Changing U[0] only shifts u by a constant, so iterate in physical space.
    fft_.inverse(U.data(), u_.data());
    for (std::size_t j = 0; j < n_; ++j) work_[j] = I * kap_[j] * U[j];
    fft_.inverse(work_.data(), ux_.data());
    const double inv_n = 1.0 / static_cast<double>(n_);
    cd u0 = U[0];
    for (int it = 0; it < cfg_.zero_mode_iterations; ++it) {
      const cd shift = (u0 - U[0]) * inv_n;
      cd sum = 0.0;
      for (std::size_t j = 0; j < n_; ++j) sum += std::norm(u_[j] + shift) * ux_[j];
      u0 = I * sum;
    }
    U[0] = u0;
  }

  void step(cvec& U) {
    const double dt = cfg_.dt;
    const cvec a = rhs(U);
    cvec A(n_), B(n_), C(n_);
    for (std::size_t j = 0; j < n_; ++j) A[j] = E2_[j] * (U[j] + dt / 2.0 * a[j]);
    fix_zero_mode(A);
    const cvec b = rhs(A);
    for (std::size_t j = 0; j < n_; ++j) B[j] = E2_[j] * U[j] + dt / 2.0 * b[j];
    fix_zero_mode(B);
    const cvec c = rhs(B);
    for (std::size_t j = 0; j < n_; ++j) C[j] = E_[j] * U[j] + dt * E2_[j] * c[j];
    fix_zero_mode(C);
    const cvec d = rhs(C);
    for (std::size_t j = 0; j < n_; ++j)
      U[j] = E_[j] * U[j] + dt / 6.0 * (E_[j] * a[j] + 2.0 * E2_[j] * (b[j] + c[j]) + d[j]);
    fix_zero_mode(U);
  }

  cvec to_physical(const cvec& U) const { return fft_.inverse(U); }
  cvec to_spectral(const cvec& u) const { return fft_.forward(u); }
  const std::vector<double>& mask() const { return mask_; }

private:
  EvolverConfig cfg_;
  std::size_t n_;
  Fft fft_;
  std::vector<double> kap_;
  cvec lin_;
  std::vector<double> gain_, mask_;
  cvec E_, E2_;
  cvec u_, ux_, work_, hat_;
};

}  // namespace

EvolutionResult evolve(const SampledPotential& u0, const EvolverConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !(cfg.beta > 0.0)) raise(ErrorKind::Config, "alpha and beta must be positive");
  if (cfg.dt == 0.0 || !std::isfinite(cfg.dt)) raise(ErrorKind::Config, "dt must be finite and nonzero");
  if (cfg.t_end != 0.0 && (cfg.t_end > 0.0) != (cfg.dt > 0.0))
    raise(ErrorKind::Config, "dt and t_end must share a sign");
  if (!(cfg.dealias_fraction > 0.0 && cfg.dealias_fraction <= 1.0))
    raise(ErrorKind::Config, "dealias_fraction must lie in (0, 1]");
  if (u0.values.size() != u0.grid.n_points) raise(ErrorKind::Config, "potential/grid size mismatch");
  check_decay(u0, cfg.decay_tol);
  const double stiff = stiffness_estimate(u0, cfg);
  if (std::abs(cfg.dt) * stiff > cfg.stability_const)
    raise(ErrorKind::StabilityViolation, "|dt| * stiffness = " + std::to_string(std::abs(cfg.dt) * stiff) +
                                             " exceeds " + std::to_string(cfg.stability_const));

  const SpatialGrid& g = u0.grid;
  Stepper st(g, cfg);
  cvec U = st.to_spectral(u0.values);
  for (std::size_t j = 0; j < U.size(); ++j) U[j] *= st.mask()[j];
  st.fix_zero_mode(U);

  const long steps = std::lround(cfg.t_end / cfg.dt);
  std::vector<long> snap_steps;
  for (double ts : cfg.snapshot_times) {
    const long s = std::lround(ts / cfg.dt);
    if (s > 0 && s < steps) snap_steps.push_back(s);
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());
  snap_steps.push_back(steps);

  EvolutionResult res;
  auto record = [&](long s) {
    SampledPotential u{g, st.to_physical(U), std::nullopt};
    const auto [m, d] = conserved_functionals(u);
    const double t = double(s) * cfg.dt;
    res.energy_log.push_back({t, m, d});
    res.snapshots.push_back({t, std::move(u)});
  };
  record(0);
  std::size_t next = 0;
  for (long s = 1; s <= steps; ++s) {
    st.step(U);
    if (s % 100 == 0 || s == steps) {
      double peak = 0.0;
      for (const cd& v : U) peak = std::max(peak, std::abs(v));
      // Parseval bound on max|u|: sum |U_j| / n.
      double bound = 0.0;
      for (const cd& v : U) bound += std::abs(v);
      bound /= double(U.size());
      if (!std::isfinite(peak) || bound > cfg.blowup_threshold)
        raise(ErrorKind::BlowUp, "field norm exceeded threshold at t = " + std::to_string(double(s) * cfg.dt));
    }
    if (next < snap_steps.size() && s == snap_steps[next]) {
      record(s);
      ++next;
    }
  }
  if (steps == 0) res.snapshots.push_back(res.snapshots.front());
  const double d_first = res.energy_log.front().d0, m_first = res.energy_log.front().mass_like;
  for (const auto& e : res.energy_log) {
    if (d_first > 0.0) res.conserved_drift = std::max(res.conserved_drift, std::abs(e.d0 - d_first) / d_first);
    if (m_first > 0.0) res.mass_drift = std::max(res.mass_drift, std::abs(e.mass_like - m_first) / m_first);
  }
  return res;
}

}  // namespace flist
