#pragma once

#include <span>
#include <vector>

#include "supercell/rates.hpp"

namespace supercell {

/// Per-attocell lists of normalized per-UE rates; the scheduler's instance
/// data. Empty inner vectors are empty attocells.
using CellRates = std::vector<std::vector<double>>;

struct SolverSettings {
  double step = 1e-3;
  int max_iterations = 20000;
  // Stop once the best objective improves by less than this relative amount
  // over a full window of iterations.
  double stagnation_rel_tol = 1e-8;
  int stagnation_window = 500;
  // Feasibility restoration after each update: Euclidean projection onto the
  // simplex (default), or clip negatives and renormalize when false.
  bool exact_simplex_projection = true;
  bool record_trace = false;
};

struct ScheduleSolution {
  std::vector<double> mu;     // best iterate, feasible
  double objective = 0.0;     // normalized units
  int iterations = 0;
  bool converged = false;     // false when the iteration cap was hit
  std::vector<double> trace;  // best objective per iteration, when recorded
};

/// Equal bandwidth split over n base stations.
std::vector<double> equal_schedule(int n_bs);

/// Projection onto the zero-sum subspace, (I - J/n) v.
std::vector<double> hyperplane_project(std::vector<double> v);

/// Euclidean projection onto the unit simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

/// Subgradient of the user-based objective: per cell, the fraction of its
/// UEs whose normalized rate still exceeds the current share. Empty cells
/// get zero.
std::vector<double> ubs_subgradient(std::span<const double> mu, const CellRates& rho);

/// Subgradient of the cell-based objective: one where the share does not yet
/// cover the cell's mean normalized rate, zero elsewhere and on empty cells.
std::vector<double> cbs_subgradient(std::span<const double> mu, const CellRates& rho);

double ubs_objective(std::span<const double> mu, const CellRates& rho);
double cbs_objective(std::span<const double> mu, const CellRates& rho);
double objective(Policy policy, std::span<const double> mu, const CellRates& rho);

/// Projected subgradient ascent from the equal split; returns the best
/// feasible iterate. Requires at least one occupied cell.
ScheduleSolution optimize(Policy policy, const CellRates& rho, const SolverSettings& settings);

/// Exhaustive simplex grid search at the given resolution; instances of up
/// to three cells only.
double grid_oracle(Policy policy, const CellRates& rho, double resolution);

}  // namespace supercell
