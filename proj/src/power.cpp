#include "supercell/power.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "supercell/rates.hpp"

namespace supercell {

std::string scheme_name(PowerScheme s) {
  switch (s) {
    case PowerScheme::Npc: return "NPC";
    case PowerScheme::Mspc: return "MSPC";
    case PowerScheme::Aspc: return "ASPC";
    case PowerScheme::Arpc: return "ARPC";
  }
  return "?";
}

PowerScheme scheme_from_name(const std::string& name) {
  if (name == "NPC") return PowerScheme::Npc;
  if (name == "MSPC") return PowerScheme::Mspc;
  if (name == "ASPC") return PowerScheme::Aspc;
  if (name == "ARPC") return PowerScheme::Arpc;
  throw std::invalid_argument("unknown power scheme '" + name + "'");
}

namespace {

// (e^x - 1) / gamma_b without overflowing for large x.
double expm1_over(double x, double gamma_b) {
  if (x > 700.0) return std::numeric_limits<double>::infinity();
  return std::expm1(x) / gamma_b;
}

}  // namespace

double mspc_coefficient(const SystemConfig& cfg, const SuperCellTopology& topo,
                        const SinrDistribution& dist) {
  const double gamma_b = cfg.backhaul_snr_unit();
  if (!(gamma_b > 0)) throw std::invalid_argument("mspc_coefficient: backhaul SNR must be positive");
  const double a = topo.n_bs_per_branch / effective_bandwidth_ratio(cfg);
  return expm1_over(a * std::log1p(dist.gamma_max()), gamma_b);
}

double aspc_coefficient(const SystemConfig& cfg, const SuperCellTopology& topo,
                        const SinrDistribution& dist) {
  const double gamma_b = cfg.backhaul_snr_unit();
  if (!(gamma_b > 0)) throw std::invalid_argument("aspc_coefficient: backhaul SNR must be positive");
  const double a = topo.n_bs_per_branch / effective_bandwidth_ratio(cfg);
  return expm1_over(a * std::log1p(dist.mean_sinr()), gamma_b);
}

double arpc_coefficient(const SystemConfig& cfg, const SuperCellTopology& topo,
                        const SinrDistribution& dist) {
  const double gamma_b = cfg.backhaul_snr_unit();
  if (!(gamma_b > 0)) throw std::invalid_argument("arpc_coefficient: backhaul SNR must be positive");
  const double x = std::numbers::ln2 / (cfg.xi_backhaul() * cfg.backhaul_bandwidth_hz) *
                   topo.n_bs_per_branch * dist.mean_rate();
  return expm1_over(x, gamma_b);
}

double cap_coefficient(double k) {
  if (k < 0.0) throw std::invalid_argument("cap_coefficient: coefficient must be nonnegative");
  return std::min(k, 1.0);
}

PowerControlResult power_control(PowerScheme scheme, const SystemConfig& cfg,
                                 const SuperCellTopology& topo, const SinrDistribution& dist) {
  PowerControlResult out;
  out.scheme = scheme;
  switch (scheme) {
    case PowerScheme::Npc: out.k_min = 1.0; break;
    case PowerScheme::Mspc: out.k_min = mspc_coefficient(cfg, topo, dist); break;
    case PowerScheme::Aspc: out.k_min = aspc_coefficient(cfg, topo, dist); break;
    case PowerScheme::Arpc: out.k_min = arpc_coefficient(cfg, topo, dist); break;
  }
  out.k_min_capped = cap_coefficient(out.k_min);
  out.backhaul_rate_bps = backhaul_rate(out.k_min_capped, cfg);
  return out;
}

}  // namespace supercell
