#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "supercell/channel.hpp"
#include "supercell/rng.hpp"
#include "supercell/scheduler.hpp"

namespace testsupport {

// Uniform draw over the equivalent disc, SINR from the full lattice sum.
inline std::vector<double> draw_disc_sinrs(const supercell::SinrDistribution& dist, int n,
                                           std::uint64_t seed) {
  supercell::Rng rng = supercell::Rng::substream(seed, 0xd15c);
  const double re = dist.config().equivalent_radius();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double r = re * std::sqrt(rng.next_unit());
    const double theta = 2.0 * std::numbers::pi * rng.next_unit();
    out[i] = dist.sinr_at(r, theta);
  }
  return out;
}

// Random scheduler instance: n cells, m UEs assigned uniformly, normalized
// rates uniform on [lo, hi].
inline supercell::CellRates random_instance(supercell::Rng& rng, int n_cells, int m_ues,
                                            double lo = 0.0, double hi = 1.2) {
  supercell::CellRates cells(n_cells);
  for (int u = 0; u < m_ues; ++u) {
    const int c = rng.next_below(n_cells);
    cells[c].push_back(lo + (hi - lo) * rng.next_unit());
  }
  return cells;
}

struct Moments {
  double mean = 0.0;
  double se_mean = 0.0;
  double var = 0.0;
  double se_var = 0.0;
};

inline Moments sample_moments(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double var = m2 / (n - 1.0);
  m2 /= n;
  m4 /= n;
  Moments out;
  out.mean = mean;
  out.se_mean = std::sqrt(var / n);
  out.var = var;
  // variance of the sample variance via the fourth central moment
  out.se_var = std::sqrt(std::max(0.0, m4 - (n - 3.0) / (n - 1.0) * m2 * m2) / n);
  return out;
}

}  // namespace testsupport
