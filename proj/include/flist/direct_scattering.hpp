#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <array>
#include <memory>
#include <numbers>
#include <vector>

#include "flist/ensemble.hpp"
#include "flist/field_core.hpp"

namespace flist {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

enum class Side { Minus, Plus };
enum class Formulation { SmallK, LargeK };
enum class FormulationChoice { Auto, SmallK, LargeK };

struct JostOptions {
  double k_switch = 1.0;
  FormulationChoice formulation = FormulationChoice::Auto;
  // Refuse when |k|^2 dx exceeds this (unresolved e^{2ik^2x}).
  double oscillation_limit = std::numbers::pi / 4.0;
  // Refuse when 2|Im k^2| times the domain length exceeds this.
  double growth_limit = 600.0;
  double decay_tol = 1e-8;
  // Relative spectral tail of u above which u_xx counts as unresolved.
  double derivative_tail_tol = 1e-6;
  // Scattering-level thresholds.
  double a_floor = 1e-6;
};

// Precomputed derivative samples shared by all k for one potential.
class JostProfile {
public:
  explicit JostProfile(const SampledPotential& u, const JostOptions& opts = {});

  const SpatialGrid& grid() const { return grid_; }
  std::size_t origin_index() const { return origin_; }
  double d0() const { return d0_; }
  // int_{-inf}^{x_i} |u_x|^2.
  double accumulated_phase(std::size_t i) const { return phase_[i]; }
  double spectral_tail() const { return tail_; }
  const JostOptions& options() const { return opts_; }

  // Node (h = 0) or half-node (h = 1, between i and i+1) samples.
  cd ux(std::size_t i, int h) const { return ux_[h][i]; }
  cd uxx(std::size_t i, int h) const { return uxx_[h][i]; }

private:
  SpatialGrid grid_;
  JostOptions opts_;
  std::size_t origin_ = 0;
  double d0_ = 0.0;
  double tail_ = 0.0;
  std::vector<double> phase_;
  std::array<cvec, 2> ux_;
  std::array<cvec, 2> uxx_;
};

Formulation choose_formulation(const JostOptions& opts, cd k);

// One Jost column in the phi gauge (phi = phi0 * omega), integrated by
// ETD-RK4 from the boundary of `side` with identity data there.  For the plus
// side the result is the unphased solution (the e^{-(i/2) d0 sigma3} factor
// is applied by the caller).  Nodes beyond `stop` (in integration order) are
// left zero when stop is given.
std::vector<Vec2> jost_column(const JostProfile& p, cd k, int column, Side side,
                              Formulation f, std::size_t stop = static_cast<std::size_t>(-1));

struct JostSolution {
  cd k;
  Side side = Side::Minus;
  Formulation formulation_used = Formulation::SmallK;
  SpatialGrid grid;
  std::vector<Mat2> omega;  // omega^{side}(x_i, k)
};

JostSolution jost_solve(const SampledPotential& u, cd k, Side side, const JostOptions& opts = {});
JostSolution jost_solve(const JostProfile& p, cd k, Side side);
JostSolution jost_solve_large_k(const SampledPotential& u, cd k, Side side,
                                const JostOptions& opts = {});

// Wronskian data at the origin node for one spectral point.
struct Connection {
  cd a;
  cd b;  // meaningful only on the cross
  Vec2 phi1_minus;
  Vec2 phi2_plus;  // includes the e^{(i/2) d0} normalization
};

// a(k) only (two stable columns).  Valid for k in the closure of D+.
cd scattering_a(const JostProfile& p, cd k);
Connection connection_at_origin(const JostProfile& p, cd k, bool with_b);

struct InvariantReport {
  double unitarity_real = 0.0;
  double unitarity_imag = 0.0;
  double symmetry_a = 0.0;
  double symmetry_b = 0.0;
  double wronskian_drift = 0.0;
  double observed_c = 1.0;  // min over nodes of min(|a|, 1/|a|)
  double d0 = 0.0;
  bool wronskian_ok = true;
};

struct ScatteringData {
  SpectralContour contour;
  cvec a_values;
  cvec b_values;
  cvec r_values;
  cd a0{1.0, 0.0};
  SolitonEnsemble discrete;
  InvariantReport report;
};

ScatteringData scattering_coefficients(const SampledPotential& u, const SpectralContour& contour,
                                       const JostOptions& opts = {});

struct AsymptoticsReport {
  double large_k_slope = 0.0;  // exponent p in |a - 1| ~ k^{-p}
  double small_k_slope = 0.0;  // exponent q in |b| ~ k^{q}
  double a0_unimodularity = 0.0;
  bool trivial = false;  // |a - 1| and |b| vanish identically
  bool pass = false;
};

AsymptoticsReport check_asymptotics(const ScatteringData& sd);

// Least-squares slope and intercept of log y against log x.
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace flist
