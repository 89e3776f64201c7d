#pragma once

#include <string>

#include "supercell/channel.hpp"
#include "supercell/config.hpp"
#include "supercell/topology.hpp"

namespace supercell {

enum class PowerScheme { Npc, Mspc, Aspc, Arpc };

std::string scheme_name(PowerScheme s);
PowerScheme scheme_from_name(const std::string& name);

/// Minimum backhaul power ratio that rules out a bottleneck even when every
/// UE sees the maximum SINR. Evaluated in the log domain; may overflow to
/// +inf for deep super cells (the unit cap then applies).
double mspc_coefficient(const SystemConfig& cfg, const SuperCellTopology& topo,
                        const SinrDistribution& dist);

/// Same criterion at the average downlink SINR.
double aspc_coefficient(const SystemConfig& cfg, const SuperCellTopology& topo,
                        const SinrDistribution& dist);

/// Same criterion at the average per-UE achievable rate.
double arpc_coefficient(const SystemConfig& cfg, const SuperCellTopology& topo,
                        const SinrDistribution& dist);

/// Unit transmit-power cap, min(k, 1).
double cap_coefficient(double k);

struct PowerControlResult {
  PowerScheme scheme = PowerScheme::Npc;
  double k_min = 1.0;         // uncapped coefficient (1 for NPC by definition)
  double k_min_capped = 1.0;  // min(k_min, 1)
  double backhaul_rate_bps = 0.0;  // bottleneck rate at the capped coefficient
};

PowerControlResult power_control(PowerScheme scheme, const SystemConfig& cfg,
                                 const SuperCellTopology& topo, const SinrDistribution& dist);

}  // namespace supercell
