#include "supercell/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace supercell {

int UeRealization::total_ues() const {
  int total = 0;
  for (const auto& cell : cell_sinr) total += static_cast<int>(cell.size());
  return total;
}

double ScheduleVector::at(int i) const { return std::clamp(mu[i], 0.0, 1.0); }

void ScheduleVector::validate() const {
  double sum = 0.0;
  for (double v : mu) {
    if (v < -1e-12 || v > 1.0 + 1e-12) {
      throw std::invalid_argument("schedule: coefficient outside [0, 1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("schedule: coefficients must sum to one");
  }
}

ScheduleVector make_schedule(int branch, std::vector<double> mu) {
  ScheduleVector s{branch, std::move(mu)};
  s.validate();
  return s;
}

double effective_bandwidth_ratio(const SystemConfig& cfg) {
  return cfg.xi_backhaul() * cfg.backhaul_bandwidth_hz /
         (cfg.xi_access() * cfg.access_bandwidth_hz);
}

double access_sum_rate(int cell, const UeRealization& real, const SystemConfig& cfg) {
  const auto& sinr = real.cell_sinr.at(cell);
  if (sinr.empty()) return 0.0;
  double sum = 0.0;
  for (double g : sinr) sum += std::log2(1.0 + g);
  return cfg.xi_access() * cfg.access_bandwidth_hz / static_cast<double>(sinr.size()) * sum;
}

double backhaul_rate(double k_b, const SystemConfig& cfg) {
  return cfg.xi_backhaul() * cfg.backhaul_bandwidth_hz * std::log2(1.0 + backhaul_snr(k_b, cfg));
}

std::map<std::pair<int, int>, double> normalize_outer_tiers(const SuperCellTopology& topo,
                                                            const ScheduleVector& schedule) {
  const std::vector<int> members = topo.branch_members(schedule.branch);
  if (static_cast<int>(members.size()) != schedule.size()) {
    throw std::invalid_argument("normalize_outer_tiers: schedule size does not match the branch");
  }
  std::map<int, double> mu_of;  // global BS index -> branch share
  for (std::size_t i = 0; i < members.size(); ++i) mu_of[members[i]] = schedule.at(static_cast<int>(i));

  std::map<std::pair<int, int>, double> shares;
  for (int bs : members) {
    for (int link : topo.path[bs]) {
      double denom = 0.0;
      for (int d : topo.descendants[link]) denom += mu_of.at(d);
      // A subtree with zero aggregate share carries no bandwidth.
      shares[{bs, link}] = denom > 0.0 ? mu_of.at(bs) / denom : 0.0;
    }
  }
  return shares;
}

double ubs_ue_rate(int cell, int ue, const ScheduleVector& schedule, const UeRealization& real,
                   double k_b, const SystemConfig& cfg) {
  const auto& sinr = real.cell_sinr.at(cell);
  const double gamma_u = sinr.at(ue);
  const int m_i = static_cast<int>(sinr.size());
  const double zeta = effective_bandwidth_ratio(cfg);
  const double backhaul_term =
      schedule.at(cell) * zeta * std::log2(1.0 + backhaul_snr(k_b, cfg));
  const double access_term = std::log2(1.0 + gamma_u);
  return cfg.xi_access() * cfg.access_bandwidth_hz / m_i * std::min(backhaul_term, access_term);
}

double cbs_bs_rate(int cell, const ScheduleVector& schedule, const UeRealization& real,
                   double k_b, const SystemConfig& cfg) {
  const double backhaul_share = schedule.at(cell) * backhaul_rate(k_b, cfg);
  return std::min(backhaul_share, access_sum_rate(cell, real, cfg));
}

double cbs_ue_rate(int cell, int ue, const ScheduleVector& schedule, const UeRealization& real,
                   double k_b, const SystemConfig& cfg) {
  const auto& sinr = real.cell_sinr.at(cell);
  const double gamma_u = sinr.at(ue);
  const int m_i = static_cast<int>(sinr.size());
  const double rb = backhaul_rate(k_b, cfg);
  const double ra = access_sum_rate(cell, real, cfg);
  if (rb > 0.0 && schedule.at(cell) <= ra / rb) {
    return schedule.at(cell) * rb / m_i;
  }
  return cfg.xi_access() * cfg.access_bandwidth_hz / m_i * std::log2(1.0 + gamma_u);
}

double branch_sum_rate(Policy policy, const ScheduleVector& schedule, const UeRealization& real,
                       double k_b, const SystemConfig& cfg, const SuperCellTopology& topo) {
  if (real.n_cells() != topo.n_bs_per_branch) {
    throw std::invalid_argument("branch_sum_rate: realization does not match the topology");
  }
  if (schedule.size() != real.n_cells()) {
    throw std::invalid_argument("branch_sum_rate: schedule does not match the realization");
  }
  double total = 0.0;
  for (int cell = 0; cell < real.n_cells(); ++cell) {
    if (real.count(cell) == 0) continue;  // empty attocells carry no traffic
    if (policy == Policy::Ubs) {
      for (int ue = 0; ue < real.count(cell); ++ue) {
        total += ubs_ue_rate(cell, ue, schedule, real, k_b, cfg);
      }
    } else {
      total += cbs_bs_rate(cell, schedule, real, k_b, cfg);
    }
  }
  return total;
}

std::vector<std::vector<double>> normalized_ue_rates(const UeRealization& real, double k_b,
                                                     const SystemConfig& cfg) {
  const double snr = backhaul_snr(k_b, cfg);
  if (!(snr > 0.0)) {
    throw std::invalid_argument("normalized_ue_rates: requires a positive backhaul SNR");
  }
  const double unit = effective_bandwidth_ratio(cfg) * std::log2(1.0 + snr);
  std::vector<std::vector<double>> rho(real.cell_sinr.size());
  for (std::size_t cell = 0; cell < real.cell_sinr.size(); ++cell) {
    rho[cell].reserve(real.cell_sinr[cell].size());
    for (double g : real.cell_sinr[cell]) rho[cell].push_back(std::log2(1.0 + g) / unit);
  }
  return rho;
}

}  // namespace supercell
