#include "supercell/bbo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "supercell/rates.hpp"
#include "supercell/rng.hpp"

namespace supercell {

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

}  // namespace

std::vector<double> occupancy_pmf(int n_bs, int m_ues) {
  if (n_bs < 1) throw std::invalid_argument("occupancy_pmf: n_bs must be >= 1");
  if (m_ues < 1) throw std::invalid_argument("occupancy_pmf: m_ues must be >= 1");
  std::vector<double> p(n_bs + 1, 0.0);
  const int top = std::min(n_bs, m_ues);
  for (int n = 1; n <= top; ++n) {
    // Kahan-compensated alternating sum over the inclusion-exclusion terms.
    double sum = 0.0, comp = 0.0;
    for (int l = 0; l <= n; ++l) {
      const double term = (l % 2 == 0 ? 1.0 : -1.0) * binomial(n, l) *
                          std::pow(static_cast<double>(n - l) / n_bs, m_ues);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    double v = binomial(n_bs, n) * sum;
    if (v < -1e-12) {
      throw std::runtime_error("occupancy_pmf: negative probability beyond round-off");
    }
    p[n] = std::clamp(v, 0.0, 1.0);
  }
  return p;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double bbo_analytic(const SystemConfig& cfg, const SuperCellTopology& topo,
                    const SinrDistribution& dist, double k_b, int m_ues) {
  if (m_ues < 1) throw std::invalid_argument("bbo_analytic: m_ues must be >= 1");
  const int n_bs = topo.n_bs_per_branch;
  const double rbk = backhaul_rate(k_b, cfg);
  const double rbar = dist.mean_rate();
  const double sigma = std::sqrt(dist.rate_variance());
  const std::vector<double> p = occupancy_pmf(n_bs, m_ues);
  double total = 0.0;
  for (int n = 1; n <= n_bs; ++n) {
    if (p[n] == 0.0) continue;
    const double scale = n / std::sqrt(static_cast<double>(m_ues)) * sigma;
    total += p[n] * gaussian_q((rbk - n * rbar) / scale);
  }
  return std::clamp(total, 0.0, 1.0);
}

namespace {

// Branch access sum rate of one seeded trial: multinomial cell split,
// uniform position in the equivalent disc, per-cell mean of log terms.
double trial_branch_sum(const SinrDistribution& dist, int n_bs, int m_ues, Rng rng,
                        double xi_ba) {
  std::vector<double> log_sum(n_bs, 0.0);
  std::vector<int> count(n_bs, 0);
  const double re = dist.config().equivalent_radius();
  for (int u = 0; u < m_ues; ++u) {
    const int cell = rng.next_below(n_bs);
    const double r = re * std::sqrt(rng.next_unit());
    const double theta = 2.0 * std::numbers::pi * rng.next_unit();
    log_sum[cell] += std::log2(1.0 + dist.sinr_at(r, theta));
    ++count[cell];
  }
  double total = 0.0;
  for (int i = 0; i < n_bs; ++i) {
    if (count[i] > 0) total += xi_ba * log_sum[i] / count[i];
  }
  return total;
}

std::vector<long> sweep_counts(const SinrDistribution& dist, int n_bs, int m_ues,
                               std::span<const double> thresholds, long trials,
                               std::uint64_t seed, int workers) {
  const double xi_ba = dist.config().xi_access() * dist.config().access_bandwidth_hz;
  workers = std::max(1, workers);
  std::vector<std::vector<long>> partial(workers, std::vector<long>(thresholds.size(), 0));
  auto run = [&](int w) {
    std::vector<long>& mine = partial[w];
    for (long t = w; t < trials; t += workers) {
      const double s =
          trial_branch_sum(dist, n_bs, m_ues, Rng::substream(seed, 0x1b0, t), xi_ba);
      for (std::size_t k = 0; k < thresholds.size(); ++k) {
        if (s > thresholds[k]) ++mine[k];
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  std::vector<long> counts(thresholds.size(), 0);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += part[k];
  }
  return counts;
}

}  // namespace

std::vector<MonteCarloBbo> bbo_monte_carlo_sweep(const SystemConfig& cfg,
                                                 const SuperCellTopology& topo,
                                                 const SinrDistribution& dist,
                                                 std::span<const double> k_b_grid, int m_ues,
                                                 long trials, std::uint64_t seed, int workers) {
  if (trials < 1) throw std::invalid_argument("bbo_monte_carlo: trials must be >= 1");
  if (m_ues < 1) throw std::invalid_argument("bbo_monte_carlo: m_ues must be >= 1");
  std::vector<double> thresholds;
  thresholds.reserve(k_b_grid.size());
  for (double kb : k_b_grid) thresholds.push_back(backhaul_rate(kb, cfg));
  const std::vector<long> counts =
      sweep_counts(dist, topo.n_bs_per_branch, m_ues, thresholds, trials, seed, workers);
  std::vector<MonteCarloBbo> out(k_b_grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double p = static_cast<double>(counts[k]) / static_cast<double>(trials);
    out[k] = {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
  }
  return out;
}

MonteCarloBbo bbo_monte_carlo(const SystemConfig& cfg, const SuperCellTopology& topo,
                              const SinrDistribution& dist, double k_b, int m_ues, long trials,
                              std::uint64_t seed, int workers) {
  const double grid[1] = {k_b};
  return bbo_monte_carlo_sweep(cfg, topo, dist, grid, m_ues, trials, seed, workers)[0];
}

BboEstimate bbo_estimate(const SystemConfig& cfg, const SuperCellTopology& topo,
                         const SinrDistribution& dist, double k_b, int m_ues, long trials,
                         std::uint64_t seed, int workers) {
  BboEstimate e;
  e.analytic = bbo_analytic(cfg, topo, dist, k_b, m_ues);
  e.monte_carlo = bbo_monte_carlo(cfg, topo, dist, k_b, m_ues, trials, seed, workers);
  e.n_tiers = topo.n_tiers;
  e.ue_density = static_cast<double>(m_ues) / topo.n_bs_per_branch;
  e.k_b = k_b;
  e.bandwidth_ratio = cfg.backhaul_bandwidth_hz / cfg.access_bandwidth_hz;
  return e;
}

double mmse_beta(std::span<const int> per_cell_counts) {
  long total = 0;
  int nonzero = 0;
  for (int c : per_cell_counts) {
    if (c < 0) throw std::invalid_argument("mmse_beta: counts must be nonnegative");
    total += c;
    if (c > 0) ++nonzero;
  }
  if (total < 1) throw std::invalid_argument("mmse_beta: at least one UE required");
  return static_cast<double>(nonzero) / static_cast<double>(total);
}

}  // namespace supercell
