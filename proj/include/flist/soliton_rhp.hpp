#pragma once

#include <vector>

#include "flist/direct_scattering.hpp"
#include "flist/ensemble.hpp"
#include "flist/spectrum_trace.hpp"

namespace flist {

struct FlParams {
  double alpha = 1.0;
  double beta = 2.0;
};

// eta(k)^2 = alpha (k - beta/(2k))^2.
cd eta_squared(const FlParams& prm, cd k);

// One simple pole of M(k) = I + sum_p v_p e_col^T / (k - p).
struct PoleTerm {
  cd point;
  int column = 0;    // column of M carrying the residue
  cd coeff;          // residue = coeff * (other column of M at point)
  cd coeff_x;        // d coeff / dx
  Vec2 residue;      // v_p
  Vec2 residue_x;    // d v_p / dx
};

struct MeromorphicSolution {
  double x = 0.0;
  double t = 0.0;
  std::vector<std::size_t> delta;
  cvec log_gamma;  // log gamma_j for the 2N expanded poles
  std::vector<PoleTerm> terms;
  double residual = 0.0;  // relative residual of the pole system

  Mat2 M(cd k) const;
  Mat2 M_at_zero() const;
  Mat2 M_prime_at_zero() const;
};

// Poles whose |gamma_j| exceeds one; flipping them keeps the pole system
// well scaled for any (x, t).
std::vector<std::size_t> auto_delta(const SolitonEnsemble& ens, double x, double t, const FlParams& prm);

MeromorphicSolution solve_reflectionless(const SolitonEnsemble& ens, const std::vector<std::size_t>& delta,
                                         double x, double t, const FlParams& prm = {});

struct ReconstructedField {
  cd u_value;
  cd u_x_value;
  double d0 = 0.0;
  bool phase_ambiguity = true;
};

ReconstructedField reconstruct(const MeromorphicSolution& ms, const SolitonEnsemble& ens);

// |u| and |u_x| of the one-soliton in closed form (exact for the pole system).
double one_soliton_modulus(const SolitonEnsemble& ens, double x, double t, const FlParams& prm = {});
double one_soliton_envelope(const SolitonEnsemble& ens, double x, double t, const FlParams& prm = {});
// Location of the maximum of |u_x| for the one-soliton.
double one_soliton_peak(const SolitonEnsemble& ens, double t, const FlParams& prm = {});
// 2 zeta sech(4 xi zeta (x - v t) - delta0) with zeta = 2 Im k1, xi = Re k1 / 2
// and delta0 aligning the peak with one_soliton_peak at t = 0.
double one_soliton_sech_envelope(const SolitonEnsemble& ens, double x, double t, const FlParams& prm = {});

// Field and u_x on the grid.  With no explicit delta the gauge is chosen per
// node by auto_delta.
SampledPotential nsoliton_field(const SolitonEnsemble& ens, const SpatialGrid& grid, double t,
                                const FlParams& prm = {});
SampledPotential nsoliton_field(const SolitonEnsemble& ens, const std::vector<std::size_t>& delta,
                                const SpatialGrid& grid, double t, const FlParams& prm = {});

}  // namespace flist
