#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "supercell/channel.hpp"
#include "supercell/config.hpp"
#include "supercell/topology.hpp"

namespace supercell {

/// Probability that exactly n of n_bs attocells are non-empty when m_ues UEs
/// land uniformly at random; entries 1..n_bs of the returned vector (index 0
/// is zero). Compensated summation keeps the alternating inner sums stable.
std::vector<double> occupancy_pmf(int n_bs, int m_ues);

/// Gaussian upper-tail probability.
double gaussian_q(double x);

/// Analytic approximation of the probability that the branch access sum rate
/// exceeds the bottleneck link rate: occupancy mixture of Gaussian tails with
/// the per-UE rate moments.
double bbo_analytic(const SystemConfig& cfg, const SuperCellTopology& topo,
                    const SinrDistribution& dist, double k_b, int m_ues);

struct MonteCarloBbo {
  double probability = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

/// Monte Carlo estimate: per trial, UEs split multinomially over the
/// branch's attocells and placed uniformly within each equivalent disc; the
/// trial counts when the raw access sum rate exceeds the bottleneck rate.
/// Per-trial RNG substreams make the result independent of worker count.
MonteCarloBbo bbo_monte_carlo(const SystemConfig& cfg, const SuperCellTopology& topo,
                              const SinrDistribution& dist, double k_b, int m_ues,
                              long trials, std::uint64_t seed, int workers = 1);

/// Same draws evaluated against a whole grid of power ratios; element i
/// equals bbo_monte_carlo at k_b_grid[i] with the same seed.
std::vector<MonteCarloBbo> bbo_monte_carlo_sweep(const SystemConfig& cfg,
                                                 const SuperCellTopology& topo,
                                                 const SinrDistribution& dist,
                                                 std::span<const double> k_b_grid, int m_ues,
                                                 long trials, std::uint64_t seed,
                                                 int workers = 1);

struct BboEstimate {
  double analytic = 0.0;
  MonteCarloBbo monte_carlo;
  int n_tiers = 0;
  double ue_density = 0.0;
  double k_b = 0.0;
  double bandwidth_ratio = 0.0;
};

BboEstimate bbo_estimate(const SystemConfig& cfg, const SuperCellTopology& topo,
                         const SinrDistribution& dist, double k_b, int m_ues, long trials,
                         std::uint64_t seed, int workers = 1);

/// Optimal scalar estimator of the occupancy-weighted branch sum in terms of
/// the plain sum: the number of non-empty attocells over the total UE count.
double mmse_beta(std::span<const int> per_cell_counts);

}  // namespace supercell
