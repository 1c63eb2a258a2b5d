#pragma once

#include <vector>

#include "flist/field_core.hpp"

namespace flist {

enum class ZeroModePolicy { AnalyticLimit, ProjectOut };

struct EvolverConfig {
  double alpha = 1.0;
  double beta = 2.0;
  double dt = 0.005;
  double t_end = 1.0;
  double dealias_fraction = 2.0 / 3.0;
  // The mean obeys alpha beta^2 (u_0 - i N_0) = 0 on the whole line; the
  // analytic limit enforces it at every stage, project_out zeroes it.
  ZeroModePolicy zero_mode = ZeroModePolicy::AnalyticLimit;
  int zero_mode_iterations = 3;
  // Snapshot times in addition to t = 0 and t_end (sorted, inside the run).
  std::vector<double> snapshot_times;
  double blowup_threshold = 1e6;
  // Boundary modulus allowed in the initial data.
  double decay_tol = 1e-8;
  // |dt| times the nonlinear stiffness estimate must stay below this
  // (RK4 imaginary-axis stability reach is 2 sqrt 2).
  double stability_const = 2.5;
};

struct Snapshot {
  double t;
  SampledPotential u;
};

struct EnergyRecord {
  double t;
  double mass_like;
  double d0;
};

struct EvolutionResult {
  std::vector<Snapshot> snapshots;
  double conserved_drift = 0.0;  // relative drift of int |u_x|^2
  double mass_drift = 0.0;
  std::vector<EnergyRecord> energy_log;
};

// (int |u|^2, int |u_x|^2), spectral u_x, trapezoid rule.
std::pair<double, double> conserved_functionals(const SampledPotential& u);

// alpha beta^2 (max|u|^2 + int |u||u_x| / (2 pi)): size of the nonlinear
// Jacobian in the Fourier-divided equation.
double stiffness_estimate(const SampledPotential& u, const EvolverConfig& cfg);

EvolutionResult evolve(const SampledPotential& u0, const EvolverConfig& cfg);

}  // namespace flist
