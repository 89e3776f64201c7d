#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "supercell/channel.hpp"
#include "supercell/quadrature.hpp"
#include "support.hpp"

using namespace supercell;

namespace {

const SystemConfig& table_config() {
  static const SystemConfig cfg{};
  return cfg;
}

const SinrDistribution& table_dist() {
  static const SinrDistribution dist(table_config());
  return dist;
}

}  // namespace

TEST_CASE("lambertian order") {
  CHECK(lambertian_order(60.0) == doctest::Approx(1.0).epsilon(1e-12));
  // high-precision reference evaluations
  CHECK(lambertian_order(40.0) == doctest::Approx(2.600780231515868).epsilon(1e-12));
  CHECK(lambertian_order(45.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(lambertian_order(0.0), std::invalid_argument);
  CHECK_THROWS_AS(lambertian_order(90.0), std::invalid_argument);
  CHECK_THROWS_AS(lambertian_order(-5.0), std::invalid_argument);
}

TEST_CASE("derived config quantities") {
  const SystemConfig& cfg = table_config();
  cfg.validate();
  CHECK(cfg.xi_access() == doctest::Approx(1022.0 / 1024.0).epsilon(1e-15));
  CHECK(cfg.fft_backhaul_effective() == 3072);
  CHECK(cfg.xi_backhaul() == doctest::Approx(3070.0 / 3072.0).epsilon(1e-15));
  CHECK(cfg.equivalent_radius() == doctest::Approx(2.273479358731744).epsilon(1e-12));
  CHECK(cfg.equivalent_radius() < cfg.cell_radius_m);
  CHECK(cfg.elec_signal_power() == doctest::Approx(100.0 / 9.0).epsilon(1e-15));
  CHECK(cfg.noise_term() == doctest::Approx(2.210007538372192e-09).epsilon(1e-9));

  SystemConfig ratio = with_bandwidth_ratio(cfg, 2.0);
  CHECK(ratio.fft_backhaul_effective() == 2048);
  CHECK(ratio.backhaul_bandwidth_hz == doctest::Approx(40e6));

  SystemConfig bad = cfg;
  bad.fft_access = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.access_semiangle_deg = 95.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("interference profile symmetry and convergence") {
  const SystemConfig& cfg = table_config();
  const double re = cfg.equivalent_radius();
  CHECK(interference_profile(0.0, Azimuth::Deg0, 10, cfg) ==
        doctest::Approx(interference_profile(0.0, Azimuth::Deg30, 10, cfg)).epsilon(1e-12));

  // rings convergence: the summands decay fast enough that doubling the
  // truncation changes the edge value by far less than 0.1%
  const double i10 = interference_profile(re, Azimuth::Deg0, 10, cfg);
  const double i20 = interference_profile(re, Azimuth::Deg0, 20, cfg);
  CHECK(std::abs(i10 - i20) / i20 < 1e-3);

  const double i1 = interference_profile(re, Azimuth::Deg0, 1, cfg);
  CHECK(i1 <= i10);

  // reference lattice sums
  CHECK(interference_profile(0.0, Azimuth::Deg0, 10, cfg) ==
        doctest::Approx(1.1740381540911919e-07).epsilon(1e-9));
  CHECK(interference_profile(re, Azimuth::Deg30, 10, cfg) ==
        doctest::Approx(3.921605168807138e-06).epsilon(1e-9));
  CHECK(interference_profile(re, Azimuth::Deg30, 1, cfg) ==
        doctest::Approx(3.917462147293283e-06).epsilon(1e-9));

  CHECK_THROWS_AS(interference_profile(-0.1, Azimuth::Deg0, 10, cfg), std::invalid_argument);
  CHECK_THROWS_AS(interference_profile(re * 1.01, Azimuth::Deg0, 10, cfg), std::invalid_argument);
  CHECK_THROWS_AS(interference_profile(1.0, Azimuth::Deg0, 0, cfg), std::invalid_argument);

  // both cached profiles are nonnegative and finite over the whole disc
  const SinrDistribution& dist = table_dist();
  for (int i = 0; i <= 64; ++i) {
    const double r = re * i / 64.0;
    for (double v : {dist.profile0(r), dist.profile30(r)}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
  }
}

TEST_CASE("downlink sinr bounds") {
  const SystemConfig& cfg = table_config();
  const SinrDistribution& dist = table_dist();
  const double re = cfg.equivalent_radius();

  CHECK(dist.gamma_min() == doctest::Approx(0.5633285076096781).epsilon(1e-9));
  CHECK(dist.gamma_max() == doctest::Approx(950.7666053789214).epsilon(1e-9));

  // cell center attains the upper support bound
  CHECK(downlink_sinr(0.0, 1.234, cfg) == doctest::Approx(dist.gamma_max()).epsilon(1e-12));
  // cell edge on the strongest-interference azimuth attains the lower bound
  CHECK(downlink_sinr(re, std::numbers::pi / 6.0, cfg) ==
        doctest::Approx(dist.gamma_min()).epsilon(1e-12));
  CHECK_THROWS_AS(downlink_sinr(re * 1.01, 0.0, cfg), std::invalid_argument);

  const SuperCellTopology topo = build_super_cell(2, cfg.cell_radius_m);
  CHECK(downlink_sinr(1.0, 0.3, 5, topo, cfg) == doctest::Approx(downlink_sinr(1.0, 0.3, cfg)));
  CHECK_THROWS_AS(downlink_sinr(1.0, 0.3, 0, topo, cfg), std::invalid_argument);
  CHECK_THROWS_AS(downlink_sinr(1.0, 0.3, 19, topo, cfg), std::invalid_argument);

  // support bounds hold over random positions
  const std::vector<double> draws = testsupport::draw_disc_sinrs(dist, 100000, 99);
  for (double g : draws) {
    CHECK(g >= dist.gamma_min() * (1.0 - 1e-9));
    CHECK(g <= dist.gamma_max() * (1.0 + 1e-9));
  }
}

TEST_CASE("backhaul snr") {
  const SystemConfig& cfg = table_config();
  CHECK(backhaul_snr(0.0, cfg) == 0.0);
  CHECK(backhaul_snr(0.4, cfg) == doctest::Approx(2.0 * backhaul_snr(0.2, cfg)).epsilon(1e-15));
  // reference evaluation with the default narrow backhaul beam
  CHECK(backhaul_snr(1.0, cfg) == doctest::Approx(10821212.11580309).epsilon(1e-12));
  SystemConfig wide = cfg;
  wide.backhaul_semiangle_deg = 40.0;
  CHECK(backhaul_snr(1.0, wide) == doctest::Approx(623.598932588196).epsilon(1e-12));
  CHECK_THROWS_AS(backhaul_snr(-0.1, cfg), std::invalid_argument);
}

TEST_CASE("sinr cdf endpoints and shape") {
  const SinrDistribution& dist = table_dist();
  CHECK(dist.cdf(dist.gamma_min()) == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(dist.cdf(dist.gamma_min() * 1.0000001) == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(dist.cdf(dist.gamma_max() * 0.9999999) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(dist.cdf(dist.gamma_min() * 0.5) == 0.0);
  CHECK(dist.cdf(dist.gamma_max() * 2.0) == 1.0);

  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double g = dist.gamma_min() *
                     std::pow(dist.gamma_max() / dist.gamma_min(), i / 100.0);
    const double p = dist.cdf(g);
    CHECK(p >= prev - 1e-9);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    prev = p;
  }
}

TEST_CASE("cdf matches the empirical distribution of lattice draws") {
  const SinrDistribution& dist = table_dist();
  std::vector<double> draws = testsupport::draw_disc_sinrs(dist, 1000000, 7321);
  std::sort(draws.begin(), draws.end());
  double worst = 0.0;
  for (int i = 1; i < 400; ++i) {
    const double g = dist.gamma_min() *
                     std::pow(dist.gamma_max() / dist.gamma_min(), i / 400.0);
    const auto it = std::upper_bound(draws.begin(), draws.end(), g);
    const double emp = static_cast<double>(it - draws.begin()) / draws.size();
    worst = std::max(worst, std::abs(emp - dist.cdf(g)));
  }
  CHECK(worst < 0.01);
}

TEST_CASE("moments agree with Monte Carlo within three standard errors") {
  const SinrDistribution& dist = table_dist();
  const SystemConfig& cfg = dist.config();
  const std::vector<double> draws = testsupport::draw_disc_sinrs(dist, 400000, 421);
  std::vector<double> rates(draws.size());
  const double xi_ba = cfg.xi_access() * cfg.access_bandwidth_hz;
  for (std::size_t i = 0; i < draws.size(); ++i) rates[i] = xi_ba * std::log2(1.0 + draws[i]);

  const testsupport::Moments gm = testsupport::sample_moments(draws);
  const testsupport::Moments rm = testsupport::sample_moments(rates);

  CHECK(std::abs(dist.mean_sinr() - gm.mean) <= 3.0 * gm.se_mean);
  CHECK(std::abs(dist.mean_rate() - rm.mean) <= 3.0 * rm.se_mean);
  CHECK(std::abs(dist.rate_variance() - rm.var) <= 3.0 * rm.se_var);

  // reference quadrature values
  CHECK(dist.mean_sinr() == doctest::Approx(100.47469829710286).epsilon(1e-3));
  CHECK(dist.mean_rate() == doctest::Approx(88110620.42972945).epsilon(1e-3));
  CHECK(dist.rate_variance() == doctest::Approx(2.791577456855202e15).epsilon(2e-3));
}

TEST_CASE("moment structure") {
  const SinrDistribution& dist = table_dist();
  const SystemConfig& cfg = dist.config();
  CHECK(dist.mean_sinr() >= dist.gamma_min());
  CHECK(dist.mean_sinr() <= dist.gamma_max());
  CHECK(dist.mean_rate() >= dist.rate_min());
  CHECK(dist.mean_rate() <= dist.rate_max());
  // concavity of the log puts the mean rate below the rate of the mean SINR
  CHECK(dist.mean_rate() <= cfg.xi_access() * cfg.access_bandwidth_hz *
                                std::log2(1.0 + dist.mean_sinr()));
  CHECK(dist.rate_variance() >= 0.0);
  const double span = dist.rate_max() - dist.rate_min();
  CHECK(dist.rate_variance() <= span * span / 4.0);
}

TEST_CASE("expectation identity for a degenerate step distribution") {
  // E[X] = x_min + integral of P[X > x]: for a CDF stepping at x0 the
  // integral contributes exactly x0 - x_min.
  const double x_min = 1.0, x_max = 10.0, x0 = 4.25;
  const auto tail = [&](double x) { return x < x0 ? 1.0 : 0.0; };
  const QuadratureResult q = integrate(tail, x_min, x_max, 1e-10, 1e-9);
  CHECK(x_min + q.value == doctest::Approx(x0).epsilon(1e-8));
}

TEST_CASE("moments are stable under deeper interference truncation") {
  SystemConfig wide = table_config();
  wide.interference_rings = 20;
  const SinrDistribution deep(wide);
  const SinrDistribution& base = table_dist();
  CHECK(std::abs(deep.mean_sinr() - base.mean_sinr()) / base.mean_sinr() < 5e-3);
  CHECK(std::abs(deep.mean_rate() - base.mean_rate()) / base.mean_rate() < 5e-3);
  CHECK(std::abs(deep.rate_variance() - base.rate_variance()) / base.rate_variance() < 5e-3);
}

TEST_CASE("adaptive quadrature basics") {
  const QuadratureResult poly = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0);
  CHECK(poly.converged);
  CHECK(poly.value == doctest::Approx(8.0).epsilon(1e-12));
  // integrand with a kink still converges
  const QuadratureResult kink =
      integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-12, 1e-10);
  CHECK(kink.converged);
  CHECK(kink.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-9));
}
