#pragma once

#include <map>
#include <utility>
#include <vector>

#include "supercell/channel.hpp"
#include "supercell/config.hpp"
#include "supercell/topology.hpp"

namespace supercell {

enum class Policy { Ubs, Cbs };

/// One Monte Carlo draw of UEs over a branch: per-attocell SINR lists,
/// cells ordered by ascending global BS index within the branch.
struct UeRealization {
  int branch = 1;
  std::vector<std::vector<double>> cell_sinr;

  int n_cells() const { return static_cast<int>(cell_sinr.size()); }
  int count(int cell) const { return static_cast<int>(cell_sinr[cell].size()); }
  int total_ues() const;
};

/// Bandwidth-sharing coefficients over a branch; a point on the unit simplex.
struct ScheduleVector {
  int branch = 1;
  std::vector<double> mu;

  int size() const { return static_cast<int>(mu.size()); }
  /// Coefficient clamped to [0, 1] on read.
  double at(int i) const;
  /// Enforces the simplex invariants (sum within 1e-9 of one, entries within
  /// 1e-12 of [0, 1]); throws std::invalid_argument otherwise.
  void validate() const;
};

ScheduleVector make_schedule(int branch, std::vector<double> mu);

/// Effective backhaul-to-access bandwidth ratio xi_b B_b / (xi_a B_a).
double effective_bandwidth_ratio(const SystemConfig& cfg);

/// Access sum rate of one attocell, bits/s; an empty attocell carries no
/// access traffic and contributes zero.
double access_sum_rate(int cell, const UeRealization& real, const SystemConfig& cfg);

/// Achievable rate of a backhaul link at power ratio k_b, bits/s.
double backhaul_rate(double k_b, const SystemConfig& cfg);

/// Per-link bandwidth shares obtained by normalizing the branch schedule so
/// outer-tier hops never restrict a path below its bottleneck share. Keys
/// are (bs_index, link_index) with link_index on the path of bs_index. A
/// subtree whose share sum vanishes carries zero bandwidth on all its links.
std::map<std::pair<int, int>, double> normalize_outer_tiers(const SuperCellTopology& topo,
                                                            const ScheduleVector& schedule);

/// End-to-end rate of UE `ue` of attocell `cell` under user-based scheduling
/// with a common backhaul power ratio.
double ubs_ue_rate(int cell, int ue, const ScheduleVector& schedule, const UeRealization& real,
                   double k_b, const SystemConfig& cfg);

/// End-to-end sum rate of one attocell under cell-based scheduling.
double cbs_bs_rate(int cell, const ScheduleVector& schedule, const UeRealization& real,
                   double k_b, const SystemConfig& cfg);

/// Per-UE split of the cell-based rate: the backhaul share divides equally
/// when the backhaul limits the cell, otherwise each UE gets its access rate.
double cbs_ue_rate(int cell, int ue, const ScheduleVector& schedule, const UeRealization& real,
                   double k_b, const SystemConfig& cfg);

/// End-to-end sum rate of the whole branch under the chosen policy.
double branch_sum_rate(Policy policy, const ScheduleVector& schedule, const UeRealization& real,
                       double k_b, const SystemConfig& cfg, const SuperCellTopology& topo);

/// Per-UE achievable rates normalized by the bottleneck-share unit
/// zeta * log2(1 + k_b gamma_b); the scheduler's natural units. Requires a
/// strictly positive backhaul SNR.
std::vector<std::vector<double>> normalized_ue_rates(const UeRealization& real, double k_b,
                                                     const SystemConfig& cfg);

}  // namespace supercell
