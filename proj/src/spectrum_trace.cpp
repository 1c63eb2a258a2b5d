#include "flist/spectrum_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flist/errors.hpp"

namespace flist {

namespace {
constexpr cd I(0.0, 1.0);
}

cd trace_formula_a(const SolitonEnsemble& ens, cd k) {
  cd a = 1.0;
  for (const auto& p : ens.expanded()) {
    const cd den = k - std::conj(p.k);
    if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(p.k)))
      raise(ErrorKind::PoleHit, "trace formula evaluated at conj(k_j)");
    a *= (k - p.k) / den;
  }
  return a;
}

cd BlaschkeSplit::a_delta(cd k) const {
  cd a = 1.0;
  for (const cd z : zeros) {
    const cd den = k - std::conj(z);
    if (std::abs(den) <= 1e-14 * std::max(1.0, std::abs(z)))
      raise(ErrorKind::PoleHit, "partial Blaschke product evaluated at a pole");
    a *= (k - z) / den;
  }
  return a;
}

cd BlaschkeSplit::a_delta_prime_at_zero(std::size_t which) const {
  const cd kj = zeros.at(which);
  cd d = 1.0 / (kj - std::conj(kj));
  for (std::size_t l = 0; l < zeros.size(); ++l)
    if (l != which) d *= (kj - zeros[l]) / (kj - std::conj(zeros[l]));
  return d;
}

BlaschkeSplit blaschke_split(const SolitonEnsemble& ens, const std::vector<std::size_t>& delta) {
  const auto all = ens.expanded();
  BlaschkeSplit s;
  for (std::size_t j : delta) {
    if (j >= all.size()) raise(ErrorKind::Config, "Blaschke index out of range");
    if (std::find(s.delta_set.begin(), s.delta_set.end(), j) != s.delta_set.end())
      raise(ErrorKind::Config, "duplicate Blaschke index");
    s.delta_set.push_back(j);
    s.zeros.push_back(all[j].k);
  }
  return s;
}

ReflectionSamples::ReflectionSamples(std::vector<double> real_k, cvec r_real, std::vector<double> imag_s,
                                     cvec r_imag)
    : real_k_(std::move(real_k)), imag_s_(std::move(imag_s)), r_real_(std::move(r_real)),
      r_imag_(std::move(r_imag)) {
  if (real_k_.size() != r_real_.size() || imag_s_.size() != r_imag_.size())
    raise(ErrorKind::Config, "reflection samples misaligned");
  auto build = [&](std::vector<double>& pos, cvec& r, std::vector<double>& knots, std::vector<double>& L,
                   bool imag_axis) {
    std::vector<std::size_t> order(pos.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pos[a] < pos[b]; });
    std::vector<double> p2;
    cvec r2;
    for (auto i : order) {
      p2.push_back(pos[i]);
      r2.push_back(r[i]);
    }
    pos = p2;
    r = r2;
    bool have_origin = false;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (!have_origin && pos[i] > 0.0) {
        knots.push_back(0.0);
        L.push_back(0.0);
        have_origin = true;
      }
      const double m = std::norm(r[i]);
      if (m != 0.0) vanishes_ = false;
      if (imag_axis && m >= 1.0) raise(ErrorKind::Config, "|r| >= 1 on the imaginary axis");
      knots.push_back(pos[i]);
      L.push_back(imag_axis ? std::log1p(-m) : std::log1p(m));
    }
    if (!have_origin) {
      knots.push_back(0.0);
      L.push_back(0.0);
    }
  };
  build(real_k_, r_real_, real_knots_, real_L_, false);
  build(imag_s_, r_imag_, imag_knots_, imag_L_, true);
  spacing_ = 0.0;
  for (const auto* kn : {&real_knots_, &imag_knots_})
    for (std::size_t i = 0; i + 1 < kn->size(); ++i) spacing_ = std::max(spacing_, (*kn)[i + 1] - (*kn)[i]);
}

ReflectionSamples ReflectionSamples::from_scattering(const ScatteringData& sd) {
  const std::size_t nr = sd.contour.real_nodes.size();
  cvec rr(sd.r_values.begin(), sd.r_values.begin() + static_cast<long>(nr));
  cvec ri(sd.r_values.begin() + static_cast<long>(nr), sd.r_values.end());
  return ReflectionSamples(sd.contour.real_nodes, rr, sd.contour.imag_nodes, ri);
}

namespace {

template <class T>
T interp(const std::vector<double>& x, const std::vector<T>& y, double t, T outside) {
  if (x.empty() || t < x.front() || t > x.back()) return outside;
  auto it = std::upper_bound(x.begin(), x.end(), t);
  if (it == x.end()) return y.back();
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  if (j == 0) return y.front();
  const double w = (t - x[j - 1]) / (x[j] - x[j - 1]);
  return y[j - 1] * (1.0 - w) + y[j] * w;
}

bool on_real_axis(const ContourPiece& p) { return p.start.imag() == 0.0 && p.end.imag() == 0.0; }
bool on_imag_axis(const ContourPiece& p) { return p.start.real() == 0.0 && p.end.real() == 0.0; }

// Breakpoints (complex positions and L values) along one piece.
void piece_knots(const ReflectionSamples& r, const ContourPiece& p, std::vector<cd>& z, std::vector<double>& L) {
  z.clear();
  L.clear();
  const bool re = on_real_axis(p);
  if (!re && !on_imag_axis(p)) raise(ErrorKind::Config, "contour piece must lie on R or iR");
  const double a = re ? p.start.real() : p.start.imag();
  const double b = re ? p.end.real() : p.end.imag();
  const auto& knots = re ? r.real_knots() : r.imag_knots();
  auto at = [&](double t) { return re ? cd(t, 0.0) : cd(0.0, t); };
  std::vector<double> ts{a};
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> inner;
  for (double t : knots)
    if (t > lo && t < hi) inner.push_back(t);
  if (b < a) std::reverse(inner.begin(), inner.end());
  ts.insert(ts.end(), inner.begin(), inner.end());
  ts.push_back(b);
  for (double t : ts) {
    z.push_back(at(t));
    L.push_back(re ? r.L_real(t) : r.L_imag(t));
  }
}

// int_{za}^{zb} (La + q (zeta - za)) / (zeta - k) dzeta.
cd linear_cauchy(cd za, cd zb, double La, double Lb, cd k) {
  const cd q = (Lb - La) / (zb - za);
  const cd ell = std::log((zb - k) / (za - k));
  return La * ell + q * ((zb - za) + (k - za) * ell);
}

double local_spacing(const ReflectionSamples& r, const ContourPiece& p, cd k) {
  const bool re = on_real_axis(p);
  const auto& kn = re ? r.real_knots() : r.imag_knots();
  const double t = re ? k.real() : k.imag();
  if (kn.size() < 2 || t <= kn.front() || t >= kn.back()) return 0.0;
  auto it = std::upper_bound(kn.begin(), kn.end(), t);
  return *it - *(it - 1);
}

double distance_to_piece(const ContourPiece& p, cd k) {
  const cd d = p.end - p.start;
  const double s = std::clamp(std::real((k - p.start) * std::conj(d)) / std::norm(d), 0.0, 1.0);
  return std::abs(k - (p.start + s * d));
}

}  // namespace

cd ReflectionSamples::r_at(cd z) const {
  if (z.imag() == 0.0) return interp<cd>(real_k_, r_real_, z.real(), cd(0.0));
  if (z.real() == 0.0) return interp<cd>(imag_s_, r_imag_, z.imag(), cd(0.0));
  raise(ErrorKind::Config, "reflection coefficient requested off the cross");
}

double ReflectionSamples::L_real(double k) const { return interp<double>(real_knots_, real_L_, k, 0.0); }
double ReflectionSamples::L_imag(double s) const { return interp<double>(imag_knots_, imag_L_, s, 0.0); }

double ReflectionSamples::L_at(cd z) const {
  if (z.imag() == 0.0) return L_real(z.real());
  if (z.real() == 0.0) return L_imag(z.imag());
  raise(ErrorKind::Config, "L requested off the cross");
}

std::vector<ContourPiece> inner_cross(double radius) {
  return {{cd(0.0), cd(radius, 0.0)},
          {cd(0.0), cd(-radius, 0.0)},
          {cd(0.0, radius), cd(0.0)},
          {cd(0.0, -radius), cd(0.0)}};
}

cd cauchy_integral(const ReflectionSamples& r, const std::vector<ContourPiece>& pieces, cd k) {
  cd total = 0.0;
  std::vector<cd> z;
  std::vector<double> L;
  for (const auto& p : pieces) {
    if (p.start == p.end) continue;
    const double dist = distance_to_piece(p, k);
    if (dist == 0.0 || dist < 3.0 * local_spacing(r, p, k))
      raise(ErrorKind::ContourProximity, "evaluation point within 3 node spacings of the contour");
    piece_knots(r, p, z, L);
    for (std::size_t i = 0; i + 1 < z.size(); ++i) total += linear_cauchy(z[i], z[i + 1], L[i], L[i + 1], k);
  }
  return total;
}

cd delta_exponential(const ReflectionSamples& r, const std::vector<ContourPiece>& pieces, int sign, cd k) {
  if (r.vanishes()) return 1.0;
  return std::exp(double(sign) / (std::numbers::pi * I) * cauchy_integral(r, pieces, k));
}

cd delta_regularized(const ReflectionSamples& r, const std::vector<ContourPiece>& pieces, cd zpt) {
  if (r.vanishes()) return 1.0;
  const double Lz = r.L_at(zpt);
  cd total = 0.0;
  std::vector<cd> z;
  std::vector<double> L;
  for (const auto& p : pieces) {
    if (p.start == p.end) continue;
    piece_knots(r, p, z, L);
    if (distance_to_piece(p, zpt) > 0.0) {
      for (std::size_t i = 0; i + 1 < z.size(); ++i) total += linear_cauchy(z[i], z[i + 1], L[i], L[i + 1], zpt);
      continue;
    }
    // (L - L(z))/(zeta - z) is bounded; on a linear segment touching z it is constant.
    for (std::size_t i = 0; i + 1 < z.size(); ++i) {
      const cd za = z[i], zb = z[i + 1];
      if (za == zpt || zb == zpt) {
        total += (L[i + 1] - L[i]);
        continue;
      }
      total += linear_cauchy(za, zb, L[i] - Lz, L[i + 1] - Lz, zpt);
    }
    const double far_b = std::abs(p.end - zpt), far_a = std::abs(p.start - zpt);
    if (far_b > 0.0) total += Lz * std::log(far_b);
    if (far_a > 0.0) total -= Lz * std::log(far_a);
  }
  return std::exp(total / (2.0 * std::numbers::pi * I));
}

double winding_number(const std::function<cd(cd)>& f, const SearchBox& box, const ZeroSearchOptions& opts) {
  const cd corners[5] = {cd(box.re_min, box.im_min), cd(box.re_max, box.im_min), cd(box.re_max, box.im_max),
                         cd(box.re_min, box.im_max), cd(box.re_min, box.im_min)};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cd za = corners[e], zb = corners[e + 1];
    std::vector<std::pair<double, cd>> pts;
    for (int j = 0; j <= opts.edge_samples; ++j) {
      const double s = double(j) / opts.edge_samples;
      pts.emplace_back(s, f(za + s * (zb - za)));
    }
    // Refine any step whose argument change is not small.
    for (std::size_t i = 0; i + 1 < pts.size();) {
      const double d = std::arg(pts[i + 1].second / pts[i].second);
      const double width = pts[i + 1].first - pts[i].first;
      if (std::abs(d) > std::numbers::pi / 4.0 && width > std::ldexp(1.0, -opts.max_bisections) / opts.edge_samples) {
        const double sm = 0.5 * (pts[i].first + pts[i + 1].first);
        pts.insert(pts.begin() + static_cast<long>(i) + 1, {sm, f(za + sm * (zb - za))});
        continue;
      }
      total += d;
      ++i;
    }
  }
  return total / (2.0 * std::numbers::pi);
}

namespace {

cd derivative5(const std::function<cd(cd)>& f, cd k) {
  const double h = 1e-5 * std::max(1.0, std::abs(k));
  return (-f(k + 2.0 * h) + 8.0 * f(k + h) - 8.0 * f(k - h) + f(k - 2.0 * h)) / (12.0 * h);
}

bool inside(const SearchBox& b, cd k) {
  return k.real() >= b.re_min && k.real() <= b.re_max && k.imag() >= b.im_min && k.imag() <= b.im_max;
}

void search(const std::function<cd(cd)>& f, const SearchBox& box, const ZeroSearchOptions& opts, int depth,
            std::vector<cd>& out) {
  const double w = winding_number(f, box, opts);
  const long count = std::lround(w);
  if (std::abs(w - double(count)) > 0.1 || count < 0)
    raise(ErrorKind::WindingMismatch, "winding number " + std::to_string(w) + " is not near an integer");
  if (count == 0) return;
  if (count == 1) {
    cd k(0.5 * (box.re_min + box.re_max), 0.5 * (box.im_min + box.im_max));
    bool ok = false;
    for (int it = 0; it < opts.newton_iters && inside(box, k); ++it) {
      const cd fk = f(k);
      if (std::abs(fk) < opts.newton_tol) {
        ok = true;
        break;
      }
      const cd step = fk / derivative5(f, k);
      k -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(k))) {
        ok = std::abs(f(k)) < 1e3 * opts.newton_tol;
        break;
      }
    }
    if (ok && inside(box, k)) {
      out.push_back(k);
      return;
    }
  }
  if (depth >= opts.max_depth) {
    if (count > 1) raise(ErrorKind::MultipleZero, "zeros not separated after subdivision limit");
    raise(ErrorKind::WindingMismatch, "winding count and located zeros disagree");
  }
  const double rm = 0.5 * (box.re_min + box.re_max), im = 0.5 * (box.im_min + box.im_max);
  const SearchBox quads[4] = {{box.re_min, rm, box.im_min, im},
                              {rm, box.re_max, box.im_min, im},
                              {box.re_min, rm, im, box.im_max},
                              {rm, box.re_max, im, box.im_max}};
  std::vector<cd> found;
  for (const auto& q : quads) search(f, q, opts, depth + 1, found);
  if (static_cast<long>(found.size()) != count)
    raise(ErrorKind::WindingMismatch, "winding count and located zeros disagree");
  out.insert(out.end(), found.begin(), found.end());
}

}  // namespace

std::vector<cd> find_zeros(const std::function<cd(cd)>& f, const SearchBox& box, const ZeroSearchOptions& opts) {
  if (!(box.re_min < box.re_max && box.im_min < box.im_max)) raise(ErrorKind::Config, "search box is empty");
  std::vector<cd> out;
  search(f, box, opts, 0, out);
  std::sort(out.begin(), out.end(), [](cd a, cd b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  for (const cd z : out)
    if (std::abs(derivative5(f, z)) < opts.simple_tol) raise(ErrorKind::MultipleZero, "|a'| below simple_tol");
  return out;
}

SolitonEnsemble find_discrete_spectrum(const SampledPotential& u, const SearchBox& box, const JostOptions& jopts,
                                       const ZeroSearchOptions& opts) {
  if (box.re_min < 0.0 || box.im_min < 0.0) raise(ErrorKind::Config, "search box must lie in the first quadrant");
  if (box.re_min == 0.0 && box.im_min == 0.0) raise(ErrorKind::Config, "search box must avoid k = 0");
  const JostProfile p(u, jopts);
  const std::function<cd(cd)> a = [&](cd k) { return scattering_a(p, k); };
  const auto zeros = find_zeros(a, box, opts);
  std::vector<Pole> poles;
  for (cd kj : zeros) {
    // The two formulations differ at the 1e-8 level, so differentiate and
    // polish with the one selected at k_j rather than switching inside the stencil.
    JostOptions fixed = jopts;
    fixed.formulation =
        choose_formulation(jopts, kj) == Formulation::SmallK ? FormulationChoice::SmallK : FormulationChoice::LargeK;
    const JostProfile pf(u, fixed);
    const std::function<cd(cd)> af = [&](cd k) { return scattering_a(pf, k); };
    for (int it = 0; it < 3; ++it) {
      const cd step = af(kj) / derivative5(af, kj);
      kj -= step;
      if (std::abs(step) < 1e-15 * std::abs(kj)) break;
    }
    const Connection c = connection_at_origin(pf, kj, false);
    // phi1^-(x) = b_j e^{2 i k_j^2 x} phi2^+(x); least squares at the origin node.
    const cd bj = c.phi2_plus.dot(c.phi1_minus) / c.phi2_plus.squaredNorm();
    const cd ap = derivative5(af, kj);
    if (std::abs(ap) < opts.simple_tol) raise(ErrorKind::MultipleZero, "|a'(k_j)| below simple_tol");
    const double x0 = p.grid().x(p.origin_index());
    poles.push_back(Pole{kj, bj * std::exp(-2.0 * I * kj * kj * x0) / ap});
  }
  return SolitonEnsemble(poles);
}

}  // namespace flist
