#pragma once

#include <cstdint>

#include "supercell/channel.hpp"
#include "supercell/rates.hpp"
#include "supercell/topology.hpp"

namespace supercell {

/// Draw one UE realization over a branch: UEs split multinomially over the
/// branch's attocells (uniform cell probabilities), positions uniform over
/// each equivalent disc, SINR from the full lattice interference sum.
/// Deterministic for a given seed.
UeRealization sample_realization(const SuperCellTopology& topo, const SinrDistribution& dist,
                                 int m_ues, std::uint64_t seed, int branch = 1);

}  // namespace supercell
