#pragma once

#include <iosfwd>
#include <vector>

namespace supercell {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Total number of base stations per branch of an n-tier super cell,
/// n(n+1)/2. Rejects n < 1.
int n_bs_per_branch(int n_tiers);

/// First global index of tier n (tiers and indices are 1-based).
inline int tier_start_index(int tier) { return 1 + 3 * tier * (tier - 1); }

/// Branch index k in 1..6 of the bottleneck link serving `bs_index` located
/// in `tier`, floor((i - (3n-1)(n-1)) / n). Rejects indices outside the
/// tier's global range.
int bottleneck_index(int bs_index, int tier);

/// Geometry and backhaul tree of a six-branch multi-tier super cell.
///
/// Global BS indices are 1-based; tier n occupies 1+3n(n-1) .. 3n(n+1),
/// counterclockwise starting from branch 1 on the +x axis. Index 0 denotes
/// the gateway at the origin. Immutable after construction.
struct SuperCellTopology {
  int n_tiers = 0;
  int n_bs_per_branch = 0;  // per branch, gateway excluded
  double cell_radius_m = 0.0;
  std::vector<int> tier_start;  // element n: first global index of tier n

  // Arrays indexed by global BS index; slot 0 is the gateway.
  std::vector<int> parent;     // parent BS index, 0 for tier-1 members
  std::vector<int> tier_of;    // 1..n_tiers
  std::vector<int> branch_of;  // 1..6
  std::vector<Vec2> position;  // meters, gateway at the origin
  std::vector<std::vector<int>> path;         // gateway-to-BS link indices, tier 1 first
  std::vector<std::vector<int>> descendants;  // BSs whose path contains the given link

  int total_bs() const { return 6 * n_bs_per_branch; }
  /// Members of one branch in ascending global index order.
  std::vector<int> branch_members(int branch) const;
  /// Local (0-based) position of `bs_index` within its branch member list.
  int local_index(int bs_index) const;
};

/// Build the topology. Parent of each outer-tier BS is the geometrically
/// nearest inner-tier BS of the same branch, ties broken toward the lower
/// global index; paths and descendant sets are derived from parents.
SuperCellTopology build_super_cell(int n_tiers, double cell_radius_m);

/// Ordered link-index list from the tier-1 link out to the BS's own link.
const std::vector<int>& path_to(const SuperCellTopology& topo, int bs_index);

/// Columns: bs_index, tier, branch, x_m, y_m, parent_index.
void write_topology_csv(const SuperCellTopology& topo, std::ostream& out);

}  // namespace supercell
