#pragma once

#include <vector>

#include "supercell/config.hpp"
#include "supercell/topology.hpp"

namespace supercell {

/// Horizontal offsets of every co-channel base station within `rings`
/// hexagonal lattice rings of the serving one. The lattice is oriented so
/// the six nearest interferers sit on azimuths 30 + 60k degrees.
std::vector<Vec2> interferer_offsets(int rings, double cell_radius_m);

enum class Azimuth { Deg0, Deg30 };

/// Co-channel interference sum at horizontal offset (r, theta) from the
/// serving BS: sum over interferers of (d^2 + h^2)^(-m-3).
double interference_sum(double r, double theta_rad, const std::vector<Vec2>& offsets,
                        const SystemConfig& cfg);

/// Interference profile along one of the two extremal azimuths. The 0-degree
/// azimuth points at a cell corner, the 30-degree azimuth at the nearest
/// interferer. Rejects r outside [0, equivalent radius].
double interference_profile(double r, Azimuth azimuth, int rings, const SystemConfig& cfg);

/// Downlink SINR per subcarrier for a UE at polar offset (r, theta) from its
/// serving BS, with all lattice BSs within cfg.interference_rings rings
/// interfering. Rejects r outside [0, equivalent radius].
double downlink_sinr(double r_m, double theta_rad, const SystemConfig& cfg);

/// Same, addressed through a topology (every BS sees the same unbounded
/// lattice, so the value depends only on the UE offset). Validates the
/// serving index.
double downlink_sinr(double r_m, double theta_rad, int serving_bs,
                     const SuperCellTopology& topo, const SystemConfig& cfg);

/// Backhaul SNR per subcarrier at power ratio k_b.
double backhaul_snr(double k_b, const SystemConfig& cfg);

/// Downlink SINR distribution over a uniformly covered attocell.
///
/// Caches the two extremal interference profiles on a radial grid and the
/// support bounds, and evaluates the CDF and the first two moments of the
/// per-UE rate by adaptive quadrature. Immutable after construction; all
/// evaluations are pure.
class SinrDistribution {
 public:
  explicit SinrDistribution(const SystemConfig& cfg);

  const SystemConfig& config() const { return cfg_; }
  double gamma_min() const { return gamma_min_; }
  double gamma_max() const { return gamma_max_; }
  double rate_min() const { return rate_min_; }
  double rate_max() const { return rate_max_; }

  /// CDF of the downlink SINR; out-of-support arguments clamp to 0 or 1.
  double cdf(double gamma) const;

  /// Average downlink SINR.
  double mean_sinr() const { return mean_sinr_; }
  /// Average per-UE achievable rate, bits/s.
  double mean_rate() const { return mean_rate_; }
  /// Second moment of the per-UE achievable rate, (bits/s)^2.
  double rate_second_moment() const { return rate_m2_; }
  /// Variance of the per-UE achievable rate, (bits/s)^2.
  double rate_variance() const { return rate_var_; }

  /// SINR at a polar offset, using the cached interferer set (hot path for
  /// Monte Carlo sampling).
  double sinr_at(double r_m, double theta_rad) const;

  /// Cached extremal profiles, linearly interpolated on the radial grid.
  double profile0(double r_m) const;
  double profile30(double r_m) const;

 private:
  double inner_integral(double gamma) const;  // int_0^Re asin'(Z(r,g)) r dr

  SystemConfig cfg_;
  std::vector<Vec2> offsets_;
  std::vector<double> grid_r_;
  std::vector<double> prof0_;
  std::vector<double> prof30_;
  double equiv_radius_ = 0.0;
  double gamma_min_ = 0.0;
  double gamma_max_ = 0.0;
  double rate_min_ = 0.0;
  double rate_max_ = 0.0;
  double mean_sinr_ = 0.0;
  double mean_rate_ = 0.0;
  double rate_m2_ = 0.0;
  double rate_var_ = 0.0;
};

}  // namespace supercell
