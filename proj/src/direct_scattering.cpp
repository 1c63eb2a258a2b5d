#include "flist/direct_scattering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "flist/errors.hpp"
#include "flist/fft.hpp"

namespace flist {

namespace {

constexpr cd I(0.0, 1.0);

struct EtdCoeffs {
  cd E, E2, Q, f1, f2, f3;
};

// Cox-Matthews ETD-RK4 weights for the scalar linear rate z = lambda*h,
// evaluated by a contour mean over the full unit circle around z.
EtdCoeffs etd_coeffs(cd z, double h) {
  constexpr int M = 32;
  cd q = 0.0, a = 0.0, b = 0.0, c = 0.0;
  for (int j = 1; j <= M; ++j) {
    const cd r = std::exp(I * (2.0 * std::numbers::pi * (j - 0.5) / M));
    const cd Z = z + r;
    const cd eZ = std::exp(Z);
    const cd Z3 = Z * Z * Z;
    q += (std::exp(Z / 2.0) - 1.0) / Z;
    a += (-4.0 - Z + eZ * (4.0 - 3.0 * Z + Z * Z)) / Z3;
    b += (2.0 + Z + eZ * (Z - 2.0)) / Z3;
    c += (-4.0 - 3.0 * Z - Z * Z + eZ * (4.0 - Z)) / Z3;
  }
  EtdCoeffs e;
  e.E = std::exp(z);
  e.E2 = std::exp(z / 2.0);
  e.Q = h * q / double(M);
  e.f1 = h * a / double(M);
  e.f2 = h * b / double(M);
  e.f3 = h * c / double(M);
  return e;
}

double spectral_tail_ratio(const cvec& v) {
  const std::size_t n = v.size();
  Fft fft(n);
  const cvec hat = fft.forward(v);
  double peak = 0.0, tail = 0.0;
  const std::size_t cut = (3 * (n / 2)) / 4;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = j <= n / 2 ? j : n - j;
    const double a = std::abs(hat[j]);
    peak = std::max(peak, a);
    if (m >= cut) tail = std::max(tail, a);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace

JostProfile::JostProfile(const SampledPotential& u, const JostOptions& opts)
    : grid_(u.grid), opts_(opts) {
  if (u.values.size() != u.grid.n_points) raise(ErrorKind::Config, "potential/grid size mismatch");
  check_decay(u, opts.decay_tol);
  const double dx = grid_.dx();
  const std::size_t n = grid_.n_points;
  ux_[0] = spectral_derivative(u.values, dx, 1, 0.0);
  ux_[1] = spectral_derivative(u.values, dx, 1, 0.5 * dx);
  uxx_[0] = spectral_derivative(u.values, dx, 2, 0.0);
  uxx_[1] = spectral_derivative(u.values, dx, 2, 0.5 * dx);
  phase_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    phase_[i + 1] = phase_[i] + dx / 6.0 *
                                    (std::norm(ux_[0][i]) + 4.0 * std::norm(ux_[1][i]) +
                                     std::norm(ux_[0][i + 1]));
  d0_ = phase_.back();
  origin_ = grid_.nearest(0.0);
  tail_ = spectral_tail_ratio(u.values);
}

Formulation choose_formulation(const JostOptions& opts, cd k) {
  switch (opts.formulation) {
    case FormulationChoice::SmallK: return Formulation::SmallK;
    case FormulationChoice::LargeK: return Formulation::LargeK;
    case FormulationChoice::Auto: break;
  }
  return std::abs(k) < opts.k_switch ? Formulation::SmallK : Formulation::LargeK;
}

std::vector<Vec2> jost_column(const JostProfile& p, cd k, int column, Side side, Formulation f,
                              std::size_t stop) {
  const auto& g = p.grid();
  const std::size_t n = g.n_points;
  const double dx = g.dx();
  const auto& opts = p.options();
  if (k == cd(0.0)) raise(ErrorKind::OriginSingularity, "k = 0 is singular for the Lax pair");
  if (std::norm(k) * dx >= opts.oscillation_limit)
    raise(ErrorKind::IllConditioned, "|k|^2 dx = " + std::to_string(std::norm(k) * dx) +
                                         " does not resolve e^{2ik^2x}; refine the grid");
  if (f == Formulation::LargeK && p.spectral_tail() > opts.derivative_tail_tol)
    raise(ErrorKind::DerivativeUnavailable, "u_xx is not resolved on this grid");

  const cd k2 = k * k;
  const cd lam = column == 0 ? 2.0 * I * k2 : -2.0 * I * k2;
  const double h = side == Side::Minus ? dx : -dx;
  const double grow = std::real(lam * h) * static_cast<double>(n - 1);
  if (grow > opts.growth_limit)
    raise(ErrorKind::IllConditioned, "Jost column grows by e^" + std::to_string(grow) +
                                         " across the domain; shrink it");

  // State ordering: column 0 is (phi11, phi21)-like with Lambda = diag(0, lam);
  // column 1 is (phi12, phi22)-like with Lambda = diag(lam, 0).
  const EtdCoeffs c0 = etd_coeffs(0.0, h);
  const EtdCoeffs cl = etd_coeffs(lam * h, h);
  const EtdCoeffs& A = column == 0 ? c0 : cl;  // first component
  const EtdCoeffs& B = column == 0 ? cl : c0;  // second component

  const bool large = f == Formulation::LargeK;
  auto Nmat = [&](std::size_t i, int half) {
    const cd a = p.ux(i, half);
    Mat2 m;
    if (!large) {
      m << 0.0, k * a, -k * std::conj(a), 0.0;
      return m;
    }
    const double m2 = std::norm(a);
    const cd b = p.uxx(i, half);
    if (column == 0) {
      const cd w = std::conj(b) - 0.5 * I * m2 * std::conj(a);
      m << -0.5 * I * m2, a, 0.5 * I * w, 0.5 * I * m2;
    } else {
      const cd w = b + 0.5 * I * m2 * a;
      m << -0.5 * I * m2, 0.5 * I * w, -std::conj(a), 0.5 * I * m2;
    }
    return m;
  };
  auto to_phi = [&](const Vec2& y, std::size_t i) {
    if (!large) return y;
    const cd a = p.ux(i, 0);
    Vec2 out;
    if (column == 0) {
      out << y(0), (y(1) - 0.5 * I * std::conj(a) * y(0)) / k;
    } else {
      out << (y(0) - 0.5 * I * a * y(1)) / k, y(1);
    }
    return out;
  };

  std::vector<Vec2> out(n, Vec2::Zero());
  const std::size_t first = side == Side::Minus ? 0 : n - 1;
  Vec2 y;
  if (!large) {
    y = column == 0 ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
  } else {
    const cd a = p.ux(first, 0);
    y = column == 0 ? Vec2(1.0, 0.5 * I * std::conj(a)) : Vec2(0.5 * I * a, 1.0);
  }
  out[first] = to_phi(y, first);
  if (first == stop) return out;

  auto mul = [](const EtdCoeffs& ca, const EtdCoeffs& cb, cd EtdCoeffs::*field, const Vec2& v) {
    return Vec2(ca.*field * v(0), cb.*field * v(1));
  };

  for (std::size_t s = 0; s + 1 < n; ++s) {
    const std::size_t i = side == Side::Minus ? s : n - 1 - s;
    const std::size_t j = side == Side::Minus ? i + 1 : i - 1;
    const std::size_t mid = std::min(i, j);
    const Mat2 Ni = Nmat(i, 0);
    const Mat2 Nm = Nmat(mid, 1);
    const Mat2 Nj = Nmat(j, 0);
    const Vec2 Nu = Ni * y;
    const Vec2 a = mul(A, B, &EtdCoeffs::E2, y) + mul(A, B, &EtdCoeffs::Q, Nu);
    const Vec2 Na = Nm * a;
    const Vec2 b = mul(A, B, &EtdCoeffs::E2, y) + mul(A, B, &EtdCoeffs::Q, Na);
    const Vec2 Nb = Nm * b;
    const Vec2 c = mul(A, B, &EtdCoeffs::E2, a) + mul(A, B, &EtdCoeffs::Q, Vec2(2.0 * Nb - Nu));
    const Vec2 Nc = Nj * c;
    y = mul(A, B, &EtdCoeffs::E, y) + mul(A, B, &EtdCoeffs::f1, Nu) +
        mul(A, B, &EtdCoeffs::f2, Vec2(2.0 * (Na + Nb))) + mul(A, B, &EtdCoeffs::f3, Nc);
    out[j] = to_phi(y, j);
    if (!std::isfinite(std::abs(y(0))) || !std::isfinite(std::abs(y(1))))
      raise(ErrorKind::IllConditioned, "Jost column overflowed");
    if (j == stop) break;
  }
  return out;
}

JostSolution jost_solve(const JostProfile& p, cd k, Side side) {
  const Formulation f = choose_formulation(p.options(), k);
  const auto c0 = jost_column(p, k, 0, side, f);
  const auto c1 = jost_column(p, k, 1, side, f);
  JostSolution js;
  js.k = k;
  js.side = side;
  js.formulation_used = f;
  js.grid = p.grid();
  js.omega.resize(c0.size());
  const cd right_phase = side == Side::Plus ? std::exp(-0.5 * I * p.d0()) : cd(1.0);
  for (std::size_t i = 0; i < c0.size(); ++i) {
    const cd gauge = std::exp(0.5 * I * p.accumulated_phase(i));
    Mat2 w;
    w.col(0) = c0[i] * right_phase;
    w.col(1) = c1[i] / right_phase;
    w.row(0) *= gauge;
    w.row(1) /= gauge;
    js.omega[i] = w;
  }
  return js;
}

JostSolution jost_solve(const SampledPotential& u, cd k, Side side, const JostOptions& opts) {
  JostProfile p(u, opts);
  return jost_solve(p, k, side);
}

JostSolution jost_solve_large_k(const SampledPotential& u, cd k, Side side, const JostOptions& opts) {
  if (std::abs(k) < opts.k_switch)
    raise(ErrorKind::Config, "large-k formulation needs |k| >= k_switch");
  JostOptions o = opts;
  o.formulation = FormulationChoice::LargeK;
  JostProfile p(u, o);
  return jost_solve(p, k, side);
}

namespace {
cd det2(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }
}  // namespace

Connection connection_at_origin(const JostProfile& p, cd k, bool with_b) {
  const Formulation f = choose_formulation(p.options(), k);
  const std::size_t o = p.origin_index();
  Connection c;
  c.phi1_minus = jost_column(p, k, 0, Side::Minus, f, o)[o];
  c.phi2_plus = jost_column(p, k, 1, Side::Plus, f, o)[o] * std::exp(0.5 * I * p.d0());
  c.a = det2(c.phi1_minus, c.phi2_plus);
  c.b = 0.0;
  if (with_b) {
    const Vec2 phi2m = jost_column(p, k, 1, Side::Minus, f, o)[o];
    c.b = det2(phi2m, c.phi2_plus);
  }
  return c;
}

cd scattering_a(const JostProfile& p, cd k) { return connection_at_origin(p, k, false).a; }

ScatteringData scattering_coefficients(const SampledPotential& u, const SpectralContour& contour,
                                       const JostOptions& opts) {
  validate_contour(contour);
  JostProfile p(u, opts);
  const cvec ks = contour.nodes();
  const std::size_t m = ks.size();
  const std::size_t n = p.grid().n_points;
  const std::array<std::size_t, 3> probes{p.origin_index(), n / 4, (3 * n) / 4};
  const cd plus_phase = std::exp(0.5 * I * p.d0());

  ScatteringData sd;
  sd.contour = contour;
  sd.a_values.resize(m);
  sd.b_values.resize(m);
  sd.r_values.resize(m);
  auto& rep = sd.report;
  rep.d0 = p.d0();

  for (std::size_t idx = 0; idx < m; ++idx) {
    const cd k = ks[idx];
    const Formulation f = choose_formulation(opts, k);
    const auto c1m = jost_column(p, k, 0, Side::Minus, f);
    const auto c2p = jost_column(p, k, 1, Side::Plus, f);
    const auto c2m = jost_column(p, k, 1, Side::Minus, f);
    std::array<cd, 3> av{}, bv{};
    for (std::size_t q = 0; q < probes.size(); ++q) {
      const std::size_t i = probes[q];
      av[q] = det2(c1m[i], c2p[i] * plus_phase);
      // The column pair carries e^{-2ik^2 x}; undo it to compare probes.
      bv[q] = det2(c2m[i], c2p[i] * plus_phase) * std::exp(2.0 * I * k * k * (p.grid().x(i) - p.grid().x(probes[0])));
    }
    const cd a = av[0], b = bv[0];
    for (std::size_t q = 1; q < probes.size(); ++q)
      rep.wronskian_drift = std::max(
          {rep.wronskian_drift, std::abs(av[q] - a) / std::max(1.0, std::abs(a)),
           std::abs(bv[q] - b) / std::max(1.0, std::abs(a))});
    if (std::abs(a) < opts.a_floor)
      raise(ErrorKind::SpectralSingularity, "|a(k)| below a_floor at k = (" +
                                                std::to_string(k.real()) + ", " +
                                                std::to_string(k.imag()) + ")");
    sd.a_values[idx] = a;
    sd.b_values[idx] = b;
    sd.r_values[idx] = b / a;
    const double r2 = std::norm(b / a);
    if (contour.is_real(idx))
      rep.unitarity_real = std::max(rep.unitarity_real, std::abs(std::norm(a) * (1.0 + r2) - 1.0));
    else
      rep.unitarity_imag = std::max(rep.unitarity_imag, std::abs(std::norm(a) * (1.0 - r2) - 1.0));
    rep.observed_c = std::min({rep.observed_c, std::abs(a), 1.0 / std::abs(a)});
  }
  rep.wronskian_ok = rep.wronskian_drift < 1e-6;

  // Parity: pair each node with its mirror on the same axis.
  auto parity = [&](const std::vector<double>& nodes, std::size_t offset) {
    std::map<double, std::size_t> where;
    for (std::size_t i = 0; i < nodes.size(); ++i) where[nodes[i]] = i;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      auto it = where.find(-nodes[i]);
      if (it == where.end()) continue;
      const std::size_t a = offset + i, b = offset + it->second;
      rep.symmetry_a = std::max(rep.symmetry_a, std::abs(sd.a_values[a] - sd.a_values[b]));
      rep.symmetry_b = std::max(rep.symmetry_b, std::abs(sd.b_values[a] + sd.b_values[b]));
    }
  };
  parity(contour.real_nodes, 0);
  parity(contour.imag_nodes, contour.real_nodes.size());

  // a0: quadratic extrapolation in k^2 from the three smallest positive real nodes.
  std::vector<std::pair<double, cd>> small;
  for (std::size_t i = 0; i < contour.real_nodes.size(); ++i)
    if (contour.real_nodes[i] > 0.0) small.emplace_back(contour.real_nodes[i], sd.a_values[i]);
  std::sort(small.begin(), small.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  if (small.size() > 3) small.resize(3);
  cd a0 = 0.0;
  for (std::size_t i = 0; i < small.size(); ++i) {
    cd w = 1.0;
    for (std::size_t j = 0; j < small.size(); ++j) {
      if (j == i) continue;
      const double ki = small[i].first * small[i].first, kj = small[j].first * small[j].first;
      w *= (0.0 - kj) / (ki - kj);
    }
    a0 += w * small[i].second;
  }
  sd.a0 = small.empty() ? cd(1.0) : a0;
  return sd;
}

std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  return {slope, (sy - slope * sx) / dn};
}

AsymptoticsReport check_asymptotics(const ScatteringData& sd) {
  std::vector<std::pair<double, std::size_t>> pos;
  for (std::size_t i = 0; i < sd.contour.real_nodes.size(); ++i)
    if (sd.contour.real_nodes[i] > 0.0) pos.emplace_back(sd.contour.real_nodes[i], i);
  std::sort(pos.begin(), pos.end());
  if (pos.size() < 6 || pos.front().first > 0.05 || pos.back().first < 20.0)
    raise(ErrorKind::InsufficientRange, "contour must span k_min <= 0.05 and k_max >= 20");

  AsymptoticsReport rep;
  rep.a0_unimodularity = std::abs(std::norm(sd.a0) - 1.0);
  double max_dev = 0.0;
  for (const auto& [k, i] : pos)
    max_dev = std::max({max_dev, std::abs(sd.a_values[i] - 1.0), std::abs(sd.b_values[i])});
  if (max_dev < 1e-14) {
    rep.trivial = true;
    rep.pass = rep.a0_unimodularity < 1e-6;
    return rep;
  }
  const double k_max = pos.back().first, k_min = pos.front().first;
  std::vector<double> xl, yl, xs, ys;
  for (const auto& [k, i] : pos) {
    if (k >= k_max / 4.0) {
      xl.push_back(k);
      yl.push_back(std::abs(sd.a_values[i] - 1.0));
    }
    if (k <= 4.0 * k_min) {
      xs.push_back(k);
      ys.push_back(std::abs(sd.b_values[i]));
    }
  }
  if (xs.size() < 3) {
    xs.clear();
    ys.clear();
    for (std::size_t q = 0; q < 3; ++q) {
      xs.push_back(pos[q].first);
      ys.push_back(std::abs(sd.b_values[pos[q].second]));
    }
  }
  // Exact zeros carry no slope information.
  auto drop_zeros = [](std::vector<double>& x, std::vector<double>& y) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (y[i] > 0.0) {
        x[m] = x[i];
        y[m] = y[i];
        ++m;
      }
    x.resize(m);
    y.resize(m);
    if (m < 2) raise(ErrorKind::InsufficientRange, "too few nonzero samples for a slope fit");
  };
  drop_zeros(xl, yl);
  drop_zeros(xs, ys);
  rep.large_k_slope = -loglog_fit(xl, yl).first;
  rep.small_k_slope = loglog_fit(xs, ys).first;
  rep.pass = rep.large_k_slope >= 0.8 && rep.small_k_slope >= 2.7 && rep.a0_unimodularity < 1e-6;
  return rep;
}

}  // namespace flist
