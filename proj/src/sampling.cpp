#include "supercell/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "supercell/rng.hpp"

namespace supercell {

UeRealization sample_realization(const SuperCellTopology& topo, const SinrDistribution& dist,
                                 int m_ues, std::uint64_t seed, int branch) {
  if (m_ues < 0) throw std::invalid_argument("sample_realization: m_ues must be nonnegative");
  if (branch < 1 || branch > 6) throw std::invalid_argument("sample_realization: branch in 1..6");
  UeRealization real;
  real.branch = branch;
  real.cell_sinr.assign(topo.n_bs_per_branch, {});
  Rng rng = Rng::substream(seed, 0x5a3);
  const double re = dist.config().equivalent_radius();
  for (int u = 0; u < m_ues; ++u) {
    const int cell = rng.next_below(topo.n_bs_per_branch);
    const double r = re * std::sqrt(rng.next_unit());
    const double theta = 2.0 * std::numbers::pi * rng.next_unit();
    real.cell_sinr[cell].push_back(dist.sinr_at(r, theta));
  }
  return real;
}

}  // namespace supercell
