#include "supercell/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace supercell {

int n_bs_per_branch(int n_tiers) {
  if (n_tiers < 1) throw std::invalid_argument("n_bs_per_branch: n_tiers must be >= 1");
  return n_tiers * (n_tiers + 1) / 2;
}

int bottleneck_index(int bs_index, int tier) {
  if (tier < 1) throw std::invalid_argument("bottleneck_index: tier must be >= 1");
  const int start = tier_start_index(tier);
  const int end = 3 * tier * (tier + 1);
  if (bs_index < start || bs_index > end) {
    throw std::invalid_argument("bottleneck_index: BS index outside the tier's global range");
  }
  return (bs_index - (3 * tier - 1) * (tier - 1)) / tier;
}

namespace {

// Axial lattice coordinates; basis vectors of length sqrt(3)*R at 0 and 60
// degrees, so branch 1 runs along the +x axis.
struct Axial {
  int p = 0;
  int q = 0;
};

// Squared center distance in units of 3R^2 for a 60-degree basis.
std::int64_t dist2_units(Axial a, Axial b) {
  const std::int64_t dp = a.p - b.p;
  const std::int64_t dq = a.q - b.q;
  return dp * dp + dq * dq + dp * dq;
}

// Ring n sites in counterclockwise order starting at the first site of the
// branch-1 sector (angle >= -30 degrees). Corners sit on the six lattice
// axes; the walk covers edge (n,-n)->(n,0) first, then wraps.
std::vector<Axial> ring_walk(int n) {
  std::vector<Axial> ring;
  ring.reserve(6 * n);
  const std::array<Axial, 6> corners = {{{n, -n}, {n, 0}, {0, n}, {-n, n}, {-n, 0}, {0, -n}}};
  const std::array<Axial, 6> steps = {{{0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}}};
  for (int e = 0; e < 6; ++e) {
    Axial s = corners[e];
    for (int j = 0; j < n; ++j) {
      ring.push_back(s);
      s.p += steps[e].p;
      s.q += steps[e].q;
    }
  }
  const int offset = (n + 1) / 2;  // first site at angle >= -30 degrees
  std::rotate(ring.begin(), ring.begin() + offset, ring.end());
  return ring;
}

}  // namespace

SuperCellTopology build_super_cell(int n_tiers, double cell_radius_m) {
  if (n_tiers < 1) throw std::invalid_argument("build_super_cell: n_tiers must be >= 1");
  if (!(cell_radius_m > 0)) throw std::invalid_argument("build_super_cell: cell_radius must be positive");

  SuperCellTopology topo;
  topo.n_tiers = n_tiers;
  topo.n_bs_per_branch = n_bs_per_branch(n_tiers);
  topo.cell_radius_m = cell_radius_m;

  const int total = topo.total_bs();
  topo.tier_start.assign(n_tiers + 1, 0);
  for (int tier = 1; tier <= n_tiers; ++tier) topo.tier_start[tier] = tier_start_index(tier);
  topo.parent.assign(total + 1, 0);
  topo.tier_of.assign(total + 1, 0);
  topo.branch_of.assign(total + 1, 0);
  topo.position.assign(total + 1, Vec2{});
  topo.path.assign(total + 1, {});
  topo.descendants.assign(total + 1, {});

  std::vector<Axial> coord(total + 1);

  const double spacing = std::sqrt(3.0) * cell_radius_m;
  const double c60 = 0.5;
  const double s60 = std::sqrt(3.0) / 2.0;

  for (int tier = 1; tier <= n_tiers; ++tier) {
    const std::vector<Axial> ring = ring_walk(tier);
    const int start = tier_start_index(tier);
    for (int j = 0; j < static_cast<int>(ring.size()); ++j) {
      const int idx = start + j;
      coord[idx] = ring[j];
      topo.tier_of[idx] = tier;
      topo.branch_of[idx] = 1 + j / tier;
      topo.position[idx] = Vec2{spacing * (ring[j].p + c60 * ring[j].q), spacing * (s60 * ring[j].q)};
    }
  }

  // Parents: nearest same-branch BS in the adjacent inner tier, ties broken
  // toward the lower global index. Tier-1 members attach to the gateway.
  for (int idx = 1; idx <= total; ++idx) {
    const int tier = topo.tier_of[idx];
    if (tier == 1) {
      topo.parent[idx] = 0;
      continue;
    }
    const int inner_start = tier_start_index(tier - 1);
    const int inner_count = 6 * (tier - 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    int best_idx = -1;
    for (int k = 0; k < inner_count; ++k) {
      const int cand = inner_start + k;
      if (topo.branch_of[cand] != topo.branch_of[idx]) continue;
      const std::int64_t d2 = dist2_units(coord[idx], coord[cand]);
      if (d2 < best) {
        best = d2;
        best_idx = cand;
      }
    }
    if (best_idx < 0) throw std::logic_error("build_super_cell: no same-branch inner-tier candidate");
    topo.parent[idx] = best_idx;
  }

  for (int idx = 1; idx <= total; ++idx) {
    std::vector<int>& p = topo.path[idx];
    for (int cur = idx; cur != 0; cur = topo.parent[cur]) p.push_back(cur);
    std::reverse(p.begin(), p.end());
    for (int link : p) topo.descendants[link].push_back(idx);
  }
  return topo;
}

std::vector<int> SuperCellTopology::branch_members(int branch) const {
  std::vector<int> out;
  out.reserve(n_bs_per_branch);
  for (int idx = 1; idx <= total_bs(); ++idx) {
    if (branch_of[idx] == branch) out.push_back(idx);
  }
  return out;
}

int SuperCellTopology::local_index(int bs_index) const {
  if (bs_index < 1 || bs_index > total_bs()) {
    throw std::invalid_argument("local_index: unknown BS index");
  }
  int local = 0;
  for (int idx = 1; idx < bs_index; ++idx) {
    if (branch_of[idx] == branch_of[bs_index]) ++local;
  }
  return local;
}

const std::vector<int>& path_to(const SuperCellTopology& topo, int bs_index) {
  if (bs_index < 1 || bs_index > topo.total_bs()) {
    throw std::invalid_argument("path_to: unknown BS index");
  }
  return topo.path[bs_index];
}

void write_topology_csv(const SuperCellTopology& topo, std::ostream& out) {
  out << "bs_index,tier,branch,x_m,y_m,parent_index\n";
  for (int idx = 1; idx <= topo.total_bs(); ++idx) {
    out << idx << ',' << topo.tier_of[idx] << ',' << topo.branch_of[idx] << ','
        << topo.position[idx].x << ',' << topo.position[idx].y << ',' << topo.parent[idx] << '\n';
  }
}

}  // namespace supercell
