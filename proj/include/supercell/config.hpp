#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace supercell {

inline constexpr const char* kVersion = "1.0.0";

/// Lambertian order of an LED with half-power semi-angle `semiangle_deg`,
/// -ln 2 / ln(cos phi). Rejects angles outside (0, 90).
double lambertian_order(double semiangle_deg);

/// Physical and waveform parameters of one super cell deployment.
///
/// Raw fields mirror the config-file keys; derived quantities (Lambertian
/// orders, subcarrier utilization, equivalent cell radius, noise term,
/// unit-power backhaul SNR) are exposed as member functions so a config is
/// always internally consistent.
struct SystemConfig {
  double led_optical_power_w = 10.0;   // downlink LED optical power P_opt
  double access_semiangle_deg = 40.0;  // downlink LED half-power semi-angle
  double backhaul_semiangle_deg = 3.1; // backhaul LED half-power semi-angle
  double vertical_sep_m = 2.25;        // BS plane to receiver plane
  double cell_radius_m = 2.5;          // hexagonal cell radius
  double access_bandwidth_hz = 20e6;
  double backhaul_bandwidth_hz = 60e6;
  int fft_access = 1024;
  // Backhaul FFT length; when unset it is derived from subchannel matching
  // B_a/N_a = B_b/N_b.
  std::optional<int> fft_backhaul;
  double noise_psd = 5e-22;            // single-sided, A^2/Hz
  double pd_area_m2 = 1e-4;
  double pd_responsivity = 0.6;        // A/W
  double dc_bias_factor = 3.0;         // DC bias = factor * signal RMS
  // Electrical signal power of the access transmitter. When unset it is
  // derived as (P_opt / dc_bias_factor)^2.
  std::optional<double> access_elec_power;
  int interference_rings = 10;         // lattice truncation for interference sums

  void validate() const;  // throws std::invalid_argument

  double xi_access() const { return (fft_access - 2.0) / fft_access; }
  double xi_backhaul() const {
    int n = fft_backhaul_effective();
    return (n - 2.0) / n;
  }
  int fft_backhaul_effective() const;
  double lambertian_access() const { return lambertian_order(access_semiangle_deg); }
  double lambertian_backhaul() const { return lambertian_order(backhaul_semiangle_deg); }
  /// Radius of the circular cell with the same area as the hexagonal cell.
  double equivalent_radius() const;
  double elec_signal_power() const;
  /// Noise-to-signal normalization term of the downlink SINR.
  double noise_term() const;
  /// Backhaul SNR per subcarrier at unit power ratio.
  double backhaul_snr_unit() const;
};

/// Copy of `cfg` with backhaul bandwidth set to `ratio` times the access
/// bandwidth and the backhaul FFT length re-derived by subchannel matching.
SystemConfig with_bandwidth_ratio(const SystemConfig& cfg, double ratio);

/// Parse a flat key = value config file ('#' starts a comment). Unknown keys
/// are rejected. Missing keys keep their defaults.
SystemConfig parse_config_file(const std::string& path);
SystemConfig parse_config_text(const std::string& text);

/// Canonical one-line-per-key serialization (stable key order).
std::string serialize_config(const SystemConfig& cfg);

/// FNV-1a hash of the canonical serialization; stamped into CSV metadata.
std::uint64_t config_hash(const SystemConfig& cfg);

}  // namespace supercell
