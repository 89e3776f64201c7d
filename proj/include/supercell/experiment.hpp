#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "supercell/config.hpp"
#include "supercell/power.hpp"
#include "supercell/scheduler.hpp"

namespace supercell {

enum class ExperimentKind {
  SumrateVsKb,
  SumrateVsLambda,
  SumrateVsNt,
  SumrateVsBw,
  PcCoefficients,
  BboVsKb,
  BboGrid,
};

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

enum class PolicySeries { UbsOpt, UbsEql, CbsOpt, CbsEql };

std::string policy_name(PolicySeries p);
PolicySeries policy_from_name(const std::string& name);

/// One experiment run: grids, series selection, Monte Carlo budget, seed.
/// Which grids apply depends on the kind; validate() enforces that.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::SumrateVsKb;

  std::vector<int> nt_grid;
  std::vector<double> lambda_grid;
  std::vector<double> kb_grid;
  std::vector<double> bw_grid;
  std::vector<PolicySeries> policies;
  std::vector<PowerScheme> schemes;

  // Fixed values for the dimensions a kind does not sweep.
  int nt = 5;
  double lambda = 1.0;
  double kb = 1e-2;
  double bw_ratio = 3.0;

  int realizations = 10000;  // sum-rate kinds
  long trials = 100000;      // BBO kinds; 0 disables Monte Carlo rows in bbo-grid
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_path = "-";  // CSV destination, '-' for stdout
  SolverSettings solver;

  void validate() const;
};

/// Stock defaults for each experiment family.
ExperimentSpec default_spec(ExperimentKind kind);

/// Log-spaced grid, endpoints included.
std::vector<double> log_grid(double lo, double hi, int points);

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Run the experiment. Realizations within a grid point execute in parallel
/// (spec.workers); per-realization RNG substreams and a fixed reduction
/// order make the result independent of the worker count.
ResultTable run_experiment(const ExperimentSpec& spec, const SystemConfig& cfg);

/// UTF-8 CSV: '#'-prefixed metadata lines, a header row, then data rows.
void write_csv(const ResultTable& table, std::ostream& out);
std::string csv_string(const ResultTable& table);

/// Shortest round-trip decimal representation (locale independent).
std::string format_double(double x);

}  // namespace supercell
