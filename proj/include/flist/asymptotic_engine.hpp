#pragma once

#include <array>
#include <vector>

#include "flist/pde_oracle.hpp"
#include "flist/soliton_rhp.hpp"
#include "flist/spectrum_trace.hpp"

namespace flist {

struct PhaseGeometry {
  double alpha = 1.0;
  double beta = 2.0;
  double xi = 1.0;
  double k0 = 1.0;
  std::array<cd, 4> z{};         // k0, i k0, -k0, -i k0
  std::array<double, 4> nu{};    // nu(z_n); zero without reflection data
};

// theta(k) = k^2 xi - alpha beta + alpha beta^2 / (4 k^2).
cd phase(cd k, const PhaseGeometry& geo);
cd phase_derivative(cd k, const PhaseGeometry& geo);

PhaseGeometry stationary_points(double alpha, double beta, double xi, double k0_floor = 1e-3);

// nu(z) = -(1/2pi) log(1 + r(z) conj r(conj z)).
double nu_at(const ReflectionSamples& r, cd z);
void attach_nu(PhaseGeometry& geo, const ReflectionSamples& r);

// f(v) = (alpha beta^2 / (4 (v + alpha)))^{1/4}; inverse of the velocity map.
double cone_radius(double alpha, double beta, double v);

struct Cone {
  double x1 = 0.0, x2 = 0.0, v1 = -0.5, v2 = -0.5;
};

struct ConeSelection {
  Cone cone;
  double inner_radius = 0.0;  // f(v2)
  double outer_radius = 0.0;  // f(v1)
  std::vector<std::size_t> K_plus, K_in, K_minus;  // representative indices
  std::size_t N_I = 0;
  cvec c_modified;  // c_j^+ for K_in, same order
  SolitonEnsemble in_ensemble;
};

ConeSelection cone_select(const SolitonEnsemble& ens, const ReflectionSamples& r, const Cone& cone,
                          double alpha, double beta);

struct PCCoefficients {
  cd r0;
  double nu = 0.0;
  cd beta12;
  cd beta21;
  double m1_norm = 0.0;
};

PCCoefficients pc_coefficients(cd r_at_z, double nu, cd delta_at_z, double k0, double t, double alpha,
                               double beta, bool on_imaginary_axis = false);

struct LeadingAsymptotic {
  cd u_lead;
  cd u_x_lead;
  double correction_bound = 0.0;
  bool pre_asymptotic = false;
  PhaseGeometry geometry;
  std::array<PCCoefficients, 4> pc{};
};

LeadingAsymptotic leading_asymptotic(const SolitonEnsemble& ens, const ReflectionSamples& r, const Cone& cone,
                                     double alpha, double beta, double x, double t, double t_min = 10.0);
// Same, reusing a precomputed selection.
LeadingAsymptotic leading_asymptotic(const ConeSelection& sel, const ReflectionSamples& r, double alpha,
                                     double beta, double x, double t, double t_min = 10.0);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
};

DecayFit fit_decay_rate(const std::vector<std::pair<double, double>>& samples);

// Residual study: evolve u0 with the PDE oracle and compare |u| against the
// cone-restricted soliton part at each requested time.
struct ResolutionRow {
  double t;
  double residual_sup;
  double bound;  // max correction_bound over the cone slice
  double slope_running;
};

std::vector<ResolutionRow> resolution_study(const SampledPotential& u0, const SolitonEnsemble& ens,
                                            const ReflectionSamples& r, const Cone& cone,
                                            const EvolverConfig& cfg, const std::vector<double>& times);

}  // namespace flist
