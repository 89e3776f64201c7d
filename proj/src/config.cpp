#include "supercell/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace supercell {

double lambertian_order(double semiangle_deg) {
  if (!(semiangle_deg > 0.0) || !(semiangle_deg < 90.0)) {
    throw std::invalid_argument("lambertian_order: semi-angle must lie in (0, 90) degrees");
  }
  const double phi = semiangle_deg * std::numbers::pi / 180.0;
  return -std::numbers::ln2 / std::log(std::cos(phi));
}

int SystemConfig::fft_backhaul_effective() const {
  if (fft_backhaul) return *fft_backhaul;
  // subchannel matching: B_a/N_a = B_b/N_b
  return static_cast<int>(std::lround(fft_access * backhaul_bandwidth_hz / access_bandwidth_hz));
}

double SystemConfig::equivalent_radius() const {
  return cell_radius_m * std::sqrt(3.0 * std::sqrt(3.0) / (2.0 * std::numbers::pi));
}

double SystemConfig::elec_signal_power() const {
  if (access_elec_power) return *access_elec_power;
  const double rms = led_optical_power_w / dc_bias_factor;
  return rms * rms;
}

double SystemConfig::noise_term() const {
  const double m = lambertian_access();
  const double pre = (m + 1.0) * std::pow(vertical_sep_m, m + 1.0) * pd_area_m2 * pd_responsivity;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 4.0 * pi2 * noise_psd * access_bandwidth_hz * xi_access() / (pre * pre * elec_signal_power());
}

double SystemConfig::backhaul_snr_unit() const {
  const double ell = lambertian_backhaul();
  const double num = (ell + 1.0) * pd_area_m2 * pd_responsivity;
  const double r4 = std::pow(cell_radius_m, 4.0);
  const double xib = xi_backhaul();
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return num * num * elec_signal_power() /
         (72.0 * pi2 * r4 * noise_psd * backhaul_bandwidth_hz * xib * xib);
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (!(led_optical_power_w > 0)) fail("led_optical_power_w must be positive");
  if (!(access_semiangle_deg > 0) || !(access_semiangle_deg < 90))
    fail("access_semiangle_deg must lie in (0, 90)");
  if (!(backhaul_semiangle_deg > 0) || !(backhaul_semiangle_deg < 90))
    fail("backhaul_semiangle_deg must lie in (0, 90)");
  if (!(vertical_sep_m > 0)) fail("vertical_sep_m must be positive");
  if (!(cell_radius_m > 0)) fail("cell_radius_m must be positive");
  if (!(access_bandwidth_hz > 0)) fail("access_bandwidth_hz must be positive");
  if (!(backhaul_bandwidth_hz > 0)) fail("backhaul_bandwidth_hz must be positive");
  if (fft_access < 3) fail("fft_access must be at least 3");
  if (fft_backhaul_effective() < 3) fail("fft_backhaul must be at least 3");
  if (!(noise_psd > 0)) fail("noise_psd must be positive");
  if (!(pd_area_m2 > 0)) fail("pd_area_m2 must be positive");
  if (!(pd_responsivity > 0)) fail("pd_responsivity must be positive");
  if (!(dc_bias_factor > 0)) fail("dc_bias_factor must be positive");
  if (access_elec_power && !(*access_elec_power > 0)) fail("access_elec_power must be positive");
  if (interference_rings < 1) fail("interference_rings must be at least 1");
}

SystemConfig with_bandwidth_ratio(const SystemConfig& cfg, double ratio) {
  if (!(ratio > 0)) throw std::invalid_argument("bandwidth ratio must be positive");
  SystemConfig out = cfg;
  out.backhaul_bandwidth_hz = ratio * cfg.access_bandwidth_hz;
  out.fft_backhaul.reset();  // re-derive by subchannel matching
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  const int i = static_cast<int>(std::lround(x));
  if (std::abs(x - i) > 1e-9) {
    throw std::invalid_argument("config: expected integer for " + key + ": '" + v + "'");
  }
  return i;
}

}  // namespace

SystemConfig parse_config_text(const std::string& text) {
  SystemConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "led_optical_power_w") cfg.led_optical_power_w = parse_double(key, val);
    else if (key == "access_semiangle_deg") cfg.access_semiangle_deg = parse_double(key, val);
    else if (key == "backhaul_semiangle_deg") cfg.backhaul_semiangle_deg = parse_double(key, val);
    else if (key == "vertical_sep_m") cfg.vertical_sep_m = parse_double(key, val);
    else if (key == "cell_radius_m") cfg.cell_radius_m = parse_double(key, val);
    else if (key == "access_bandwidth_hz") cfg.access_bandwidth_hz = parse_double(key, val);
    else if (key == "backhaul_bandwidth_hz") cfg.backhaul_bandwidth_hz = parse_double(key, val);
    else if (key == "fft_access") cfg.fft_access = parse_int(key, val);
    else if (key == "fft_backhaul") cfg.fft_backhaul = parse_int(key, val);
    else if (key == "noise_psd") cfg.noise_psd = parse_double(key, val);
    else if (key == "pd_area_m2") cfg.pd_area_m2 = parse_double(key, val);
    else if (key == "pd_responsivity") cfg.pd_responsivity = parse_double(key, val);
    else if (key == "dc_bias_factor") cfg.dc_bias_factor = parse_double(key, val);
    else if (key == "access_elec_power") cfg.access_elec_power = parse_double(key, val);
    else if (key == "interference_rings") cfg.interference_rings = parse_int(key, val);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

SystemConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

std::string fmt_num(double x) {
  std::array<char, 40> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), p);
}

}  // namespace

std::string serialize_config(const SystemConfig& cfg) {
  std::ostringstream out;
  out << "led_optical_power_w = " << fmt_num(cfg.led_optical_power_w) << '\n'
      << "access_semiangle_deg = " << fmt_num(cfg.access_semiangle_deg) << '\n'
      << "backhaul_semiangle_deg = " << fmt_num(cfg.backhaul_semiangle_deg) << '\n'
      << "vertical_sep_m = " << fmt_num(cfg.vertical_sep_m) << '\n'
      << "cell_radius_m = " << fmt_num(cfg.cell_radius_m) << '\n'
      << "access_bandwidth_hz = " << fmt_num(cfg.access_bandwidth_hz) << '\n'
      << "backhaul_bandwidth_hz = " << fmt_num(cfg.backhaul_bandwidth_hz) << '\n'
      << "fft_access = " << cfg.fft_access << '\n'
      << "fft_backhaul = " << cfg.fft_backhaul_effective() << '\n'
      << "noise_psd = " << fmt_num(cfg.noise_psd) << '\n'
      << "pd_area_m2 = " << fmt_num(cfg.pd_area_m2) << '\n'
      << "pd_responsivity = " << fmt_num(cfg.pd_responsivity) << '\n'
      << "dc_bias_factor = " << fmt_num(cfg.dc_bias_factor) << '\n'
      << "access_elec_power = " << fmt_num(cfg.elec_signal_power()) << '\n'
      << "interference_rings = " << cfg.interference_rings << '\n';
  return out.str();
}

std::uint64_t config_hash(const SystemConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace supercell
