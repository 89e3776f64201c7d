#include "supercell/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "supercell/quadrature.hpp"

namespace supercell {

namespace {

constexpr int kProfileGridSize = 512;
constexpr double kPi = std::numbers::pi;

double clamped_asin(double x) {
  if (x > 1.0) return kPi / 2.0;
  if (x < -1.0) return -kPi / 2.0;
  return std::asin(x);
}

}  // namespace

std::vector<Vec2> interferer_offsets(int rings, double cell_radius_m) {
  if (rings < 1) throw std::invalid_argument("interferer_offsets: rings must be >= 1");
  const double s = std::sqrt(3.0) * cell_radius_m;
  // Basis at 30 and 90 degrees puts the six nearest interferers on
  // azimuths 30 + 60k.
  const double a1x = s * std::sqrt(3.0) / 2.0, a1y = s * 0.5;
  const double a2x = 0.0, a2y = s;
  std::vector<Vec2> offs;
  offs.reserve(static_cast<std::size_t>(3 * rings) * (rings + 1));
  for (int p = -rings; p <= rings; ++p) {
    for (int q = -rings; q <= rings; ++q) {
      if (p == 0 && q == 0) continue;
      const int ring = std::max({std::abs(p), std::abs(q), std::abs(p + q)});
      if (ring > rings) continue;
      offs.push_back(Vec2{p * a1x + q * a2x, p * a1y + q * a2y});
    }
  }
  return offs;
}

double interference_sum(double r, double theta_rad, const std::vector<Vec2>& offsets,
                        const SystemConfig& cfg) {
  const double x = r * std::cos(theta_rad);
  const double y = r * std::sin(theta_rad);
  const double h2 = cfg.vertical_sep_m * cfg.vertical_sep_m;
  const double expo = -cfg.lambertian_access() - 3.0;
  double acc = 0.0;
  for (const Vec2& o : offsets) {
    const double dx = x - o.x;
    const double dy = y - o.y;
    acc += std::pow(dx * dx + dy * dy + h2, expo);
  }
  return acc;
}

double interference_profile(double r, Azimuth azimuth, int rings, const SystemConfig& cfg) {
  if (r < 0.0 || r > cfg.equivalent_radius() * (1.0 + 1e-12)) {
    throw std::invalid_argument("interference_profile: r outside [0, equivalent radius]");
  }
  const std::vector<Vec2> offs = interferer_offsets(rings, cfg.cell_radius_m);
  const double theta = azimuth == Azimuth::Deg0 ? 0.0 : kPi / 6.0;
  return interference_sum(r, theta, offs, cfg);
}

namespace {

double sinr_from_parts(double r, double interference, const SystemConfig& cfg) {
  const double h2 = cfg.vertical_sep_m * cfg.vertical_sep_m;
  const double signal = std::pow(r * r + h2, -cfg.lambertian_access() - 3.0) / cfg.xi_access();
  return signal / (interference + cfg.noise_term());
}

}  // namespace

double downlink_sinr(double r_m, double theta_rad, const SystemConfig& cfg) {
  if (r_m < 0.0 || r_m > cfg.equivalent_radius() * (1.0 + 1e-12)) {
    throw std::invalid_argument("downlink_sinr: UE outside the serving equivalent disc");
  }
  const std::vector<Vec2> offs = interferer_offsets(cfg.interference_rings, cfg.cell_radius_m);
  return sinr_from_parts(r_m, interference_sum(r_m, theta_rad, offs, cfg), cfg);
}

double downlink_sinr(double r_m, double theta_rad, int serving_bs,
                     const SuperCellTopology& topo, const SystemConfig& cfg) {
  if (serving_bs < 1 || serving_bs > topo.total_bs()) {
    throw std::invalid_argument("downlink_sinr: unknown serving BS index");
  }
  return downlink_sinr(r_m, theta_rad, cfg);
}

double backhaul_snr(double k_b, const SystemConfig& cfg) {
  if (k_b < 0.0) throw std::invalid_argument("backhaul_snr: power ratio must be nonnegative");
  return k_b * cfg.backhaul_snr_unit();
}

SinrDistribution::SinrDistribution(const SystemConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  offsets_ = interferer_offsets(cfg_.interference_rings, cfg_.cell_radius_m);
  equiv_radius_ = cfg_.equivalent_radius();

  grid_r_.resize(kProfileGridSize);
  prof0_.resize(kProfileGridSize);
  prof30_.resize(kProfileGridSize);
  for (int i = 0; i < kProfileGridSize; ++i) {
    const double r = equiv_radius_ * i / (kProfileGridSize - 1);
    grid_r_[i] = r;
    prof0_[i] = interference_sum(r, 0.0, offsets_, cfg_);
    prof30_[i] = interference_sum(r, kPi / 6.0, offsets_, cfg_);
  }

  gamma_min_ = sinr_from_parts(equiv_radius_, prof30_.back(), cfg_);
  gamma_max_ = sinr_from_parts(0.0, prof0_.front(), cfg_);

  const double xi_ba = cfg_.xi_access() * cfg_.access_bandwidth_hz;
  rate_min_ = xi_ba * std::log2(1.0 + gamma_min_);
  rate_max_ = xi_ba * std::log2(1.0 + gamma_max_);

  // Outer integrals over gamma run in log space; the support spans more
  // than three decades.
  const double lo = std::log(gamma_min_);
  const double hi = std::log(gamma_max_);
  const auto outer = [&](const std::function<double(double)>& weight) {
    return integrate(
        [&](double t) {
          const double g = std::exp(t);
          return inner_integral(g) * weight(g) * g;
        },
        lo, hi, 1e-12, 1e-7, 6000);
  };

  const QuadratureResult q1 = outer([](double) { return 1.0; });
  const QuadratureResult q2 = outer([](double g) { return 1.0 / (1.0 + g); });
  const QuadratureResult q3 = outer([](double g) { return std::log1p(g) / (1.0 + g); });
  for (const QuadratureResult* q : {&q1, &q2, &q3}) {
    if (!q->converged) {
      throw std::runtime_error(
          "SinrDistribution: moment quadrature did not converge; achieved error " +
          std::to_string(q->error));
    }
  }

  const double re2 = equiv_radius_ * equiv_radius_;
  const double ln2 = std::numbers::ln2;
  mean_sinr_ = 0.5 * (gamma_min_ + gamma_max_) + 2.0 / (kPi * re2) * q1.value;
  mean_rate_ = 0.5 * (rate_min_ + rate_max_) + 2.0 * xi_ba / (kPi * re2 * ln2) * q2.value;
  const double pre = 2.0 * xi_ba / (equiv_radius_ * ln2);
  rate_m2_ = 0.5 * (rate_min_ * rate_min_ + rate_max_ * rate_max_) + pre * pre / kPi * q3.value;

  const double var = rate_m2_ - mean_rate_ * mean_rate_;
  const double tol = 1e-6 * rate_m2_;
  if (var < -tol) {
    throw std::runtime_error("SinrDistribution: negative rate variance beyond quadrature tolerance");
  }
  rate_var_ = std::max(var, 0.0);
}

double SinrDistribution::profile0(double r_m) const {
  const double t = std::clamp(r_m, 0.0, equiv_radius_) / equiv_radius_ * (kProfileGridSize - 1);
  const int i = std::min(static_cast<int>(t), kProfileGridSize - 2);
  const double f = t - i;
  return prof0_[i] * (1.0 - f) + prof0_[i + 1] * f;
}

double SinrDistribution::profile30(double r_m) const {
  const double t = std::clamp(r_m, 0.0, equiv_radius_) / equiv_radius_ * (kProfileGridSize - 1);
  const int i = std::min(static_cast<int>(t), kProfileGridSize - 2);
  const double f = t - i;
  return prof30_[i] * (1.0 - f) + prof30_[i + 1] * f;
}

double SinrDistribution::sinr_at(double r_m, double theta_rad) const {
  if (r_m < 0.0 || r_m > equiv_radius_ * (1.0 + 1e-12)) {
    throw std::invalid_argument("sinr_at: UE outside the serving equivalent disc");
  }
  return sinr_from_parts(r_m, interference_sum(r_m, theta_rad, offsets_, cfg_), cfg_);
}

double SinrDistribution::inner_integral(double gamma) const {
  const double h2 = cfg_.vertical_sep_m * cfg_.vertical_sep_m;
  const double expo = -cfg_.lambertian_access() - 3.0;
  const double inv_xi = 1.0 / cfg_.xi_access();
  const double omega = cfg_.noise_term();
  const auto integrand = [&](double r) {
    const double threshold = inv_xi * std::pow(r * r + h2, expo) / gamma - omega;
    const double i0 = profile0(r);
    const double i30 = profile30(r);
    const double mid = 0.5 * (i0 + i30);
    const double half_span = 0.5 * std::abs(i0 - i30);
    double z;
    if (half_span > 0.0) {
      z = (threshold - mid) / half_span;
    } else {
      z = threshold > mid ? 2.0 : (threshold < mid ? -2.0 : 0.0);
    }
    return clamped_asin(z) * r;
  };
  const QuadratureResult q = integrate(integrand, 0.0, equiv_radius_, 1e-10, 1e-9, 800);
  return q.value;
}

double SinrDistribution::cdf(double gamma) const {
  if (gamma <= gamma_min_) return 0.0;
  if (gamma >= gamma_max_) return 1.0;
  const double re2 = equiv_radius_ * equiv_radius_;
  const double p = 0.5 - 2.0 / (kPi * re2) * inner_integral(gamma);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace supercell
