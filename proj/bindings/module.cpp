#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "supercell/bbo.hpp"
#include "supercell/channel.hpp"
#include "supercell/config.hpp"
#include "supercell/experiment.hpp"
#include "supercell/power.hpp"
#include "supercell/rates.hpp"
#include "supercell/sampling.hpp"
#include "supercell/scheduler.hpp"
#include "supercell/topology.hpp"

namespace py = pybind11;
using namespace supercell;

PYBIND11_MODULE(_supercell, m) {
  m.doc() = "Multi-tier LiFi attocell super cells with multi-hop optical wireless backhaul: "
            "SINR/rate models, bandwidth scheduling, power control and bottleneck statistics.";
  m.attr("__version__") = kVersion;

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("led_optical_power_w", &SystemConfig::led_optical_power_w)
      .def_readwrite("access_semiangle_deg", &SystemConfig::access_semiangle_deg)
      .def_readwrite("backhaul_semiangle_deg", &SystemConfig::backhaul_semiangle_deg)
      .def_readwrite("vertical_sep_m", &SystemConfig::vertical_sep_m)
      .def_readwrite("cell_radius_m", &SystemConfig::cell_radius_m)
      .def_readwrite("access_bandwidth_hz", &SystemConfig::access_bandwidth_hz)
      .def_readwrite("backhaul_bandwidth_hz", &SystemConfig::backhaul_bandwidth_hz)
      .def_readwrite("fft_access", &SystemConfig::fft_access)
      .def_readwrite("fft_backhaul", &SystemConfig::fft_backhaul)
      .def_readwrite("noise_psd", &SystemConfig::noise_psd)
      .def_readwrite("pd_area_m2", &SystemConfig::pd_area_m2)
      .def_readwrite("pd_responsivity", &SystemConfig::pd_responsivity)
      .def_readwrite("dc_bias_factor", &SystemConfig::dc_bias_factor)
      .def_readwrite("access_elec_power", &SystemConfig::access_elec_power)
      .def_readwrite("interference_rings", &SystemConfig::interference_rings)
      .def("validate", &SystemConfig::validate)
      .def("xi_access", &SystemConfig::xi_access)
      .def("xi_backhaul", &SystemConfig::xi_backhaul)
      .def("fft_backhaul_effective", &SystemConfig::fft_backhaul_effective)
      .def("lambertian_access", &SystemConfig::lambertian_access)
      .def("lambertian_backhaul", &SystemConfig::lambertian_backhaul)
      .def("equivalent_radius", &SystemConfig::equivalent_radius)
      .def("elec_signal_power", &SystemConfig::elec_signal_power)
      .def("noise_term", &SystemConfig::noise_term)
      .def("backhaul_snr_unit", &SystemConfig::backhaul_snr_unit);

  m.def("lambertian_order", &lambertian_order, py::arg("semiangle_deg"));
  m.def("with_bandwidth_ratio", &with_bandwidth_ratio, py::arg("cfg"), py::arg("ratio"));
  m.def("parse_config_file", &parse_config_file, py::arg("path"));
  m.def("config_hash", &config_hash, py::arg("cfg"));

  py::class_<Vec2>(m, "Vec2")
      .def_readonly("x", &Vec2::x)
      .def_readonly("y", &Vec2::y);

  py::class_<SuperCellTopology>(m, "SuperCellTopology")
      .def_readonly("n_tiers", &SuperCellTopology::n_tiers)
      .def_readonly("n_bs_per_branch", &SuperCellTopology::n_bs_per_branch)
      .def_readonly("cell_radius_m", &SuperCellTopology::cell_radius_m)
      .def_readonly("tier_start", &SuperCellTopology::tier_start)
      .def_readonly("parent", &SuperCellTopology::parent)
      .def_readonly("tier_of", &SuperCellTopology::tier_of)
      .def_readonly("branch_of", &SuperCellTopology::branch_of)
      .def_readonly("position", &SuperCellTopology::position)
      .def_readonly("path", &SuperCellTopology::path)
      .def_readonly("descendants", &SuperCellTopology::descendants)
      .def("total_bs", &SuperCellTopology::total_bs)
      .def("branch_members", &SuperCellTopology::branch_members, py::arg("branch"))
      .def("local_index", &SuperCellTopology::local_index, py::arg("bs_index"))
      .def("to_csv", [](const SuperCellTopology& t) {
        std::ostringstream out;
        write_topology_csv(t, out);
        return out.str();
      });

  m.def("n_bs_per_branch", &n_bs_per_branch, py::arg("n_tiers"));
  m.def("bottleneck_index", &bottleneck_index, py::arg("bs_index"), py::arg("tier"));
  m.def("build_super_cell", &build_super_cell, py::arg("n_tiers"), py::arg("cell_radius_m"));
  m.def("path_to", [](const SuperCellTopology& t, int bs) { return path_to(t, bs); },
        py::arg("topology"), py::arg("bs_index"));

  py::class_<SinrDistribution>(m, "SinrDistribution")
      .def(py::init<const SystemConfig&>(), py::arg("cfg"))
      .def("cdf", &SinrDistribution::cdf, py::arg("gamma"))
      .def("gamma_min", &SinrDistribution::gamma_min)
      .def("gamma_max", &SinrDistribution::gamma_max)
      .def("rate_min", &SinrDistribution::rate_min)
      .def("rate_max", &SinrDistribution::rate_max)
      .def("mean_sinr", &SinrDistribution::mean_sinr)
      .def("mean_rate", &SinrDistribution::mean_rate)
      .def("rate_second_moment", &SinrDistribution::rate_second_moment)
      .def("rate_variance", &SinrDistribution::rate_variance)
      .def("sinr_at", &SinrDistribution::sinr_at, py::arg("r_m"), py::arg("theta_rad"));

  m.def("downlink_sinr",
        py::overload_cast<double, double, const SystemConfig&>(&downlink_sinr),
        py::arg("r_m"), py::arg("theta_rad"), py::arg("cfg"));
  m.def("backhaul_snr", &backhaul_snr, py::arg("k_b"), py::arg("cfg"));
  m.def("interference_profile",
        [](double r, int azimuth_deg, int rings, const SystemConfig& cfg) {
          if (azimuth_deg != 0 && azimuth_deg != 30)
            throw std::invalid_argument("azimuth must be 0 or 30 degrees");
          return interference_profile(
              r, azimuth_deg == 0 ? Azimuth::Deg0 : Azimuth::Deg30, rings, cfg);
        },
        py::arg("r_m"), py::arg("azimuth_deg"), py::arg("rings"), py::arg("cfg"));

  py::class_<UeRealization>(m, "UeRealization")
      .def(py::init<>())
      .def_readwrite("branch", &UeRealization::branch)
      .def_readwrite("cell_sinr", &UeRealization::cell_sinr)
      .def("n_cells", &UeRealization::n_cells)
      .def("count", &UeRealization::count, py::arg("cell"))
      .def("total_ues", &UeRealization::total_ues);

  py::class_<ScheduleVector>(m, "ScheduleVector")
      .def(py::init<>())
      .def_readwrite("branch", &ScheduleVector::branch)
      .def_readwrite("mu", &ScheduleVector::mu)
      .def("validate", &ScheduleVector::validate);

  py::enum_<Policy>(m, "Policy").value("UBS", Policy::Ubs).value("CBS", Policy::Cbs);

  m.def("effective_bandwidth_ratio", &effective_bandwidth_ratio, py::arg("cfg"));
  m.def("access_sum_rate", &access_sum_rate, py::arg("cell"), py::arg("real"), py::arg("cfg"));
  m.def("backhaul_rate", &backhaul_rate, py::arg("k_b"), py::arg("cfg"));
  m.def("normalize_outer_tiers", &normalize_outer_tiers, py::arg("topology"), py::arg("schedule"));
  m.def("branch_sum_rate", &branch_sum_rate, py::arg("policy"), py::arg("schedule"),
        py::arg("real"), py::arg("k_b"), py::arg("cfg"), py::arg("topology"));
  m.def("normalized_ue_rates", &normalized_ue_rates, py::arg("real"), py::arg("k_b"),
        py::arg("cfg"));

  py::class_<SolverSettings>(m, "SolverSettings")
      .def(py::init<>())
      .def_readwrite("step", &SolverSettings::step)
      .def_readwrite("max_iterations", &SolverSettings::max_iterations)
      .def_readwrite("stagnation_rel_tol", &SolverSettings::stagnation_rel_tol)
      .def_readwrite("stagnation_window", &SolverSettings::stagnation_window)
      .def_readwrite("exact_simplex_projection", &SolverSettings::exact_simplex_projection)
      .def_readwrite("record_trace", &SolverSettings::record_trace);

  py::class_<ScheduleSolution>(m, "ScheduleSolution")
      .def_readonly("mu", &ScheduleSolution::mu)
      .def_readonly("objective", &ScheduleSolution::objective)
      .def_readonly("iterations", &ScheduleSolution::iterations)
      .def_readonly("converged", &ScheduleSolution::converged)
      .def_readonly("trace", &ScheduleSolution::trace);

  m.def("equal_schedule", &equal_schedule, py::arg("n_bs"));
  m.def("optimize", &optimize, py::arg("policy"), py::arg("rho"),
        py::arg("settings") = SolverSettings{});
  m.def("grid_oracle", &grid_oracle, py::arg("policy"), py::arg("rho"), py::arg("resolution"));

  py::enum_<PowerScheme>(m, "PowerScheme")
      .value("NPC", PowerScheme::Npc)
      .value("MSPC", PowerScheme::Mspc)
      .value("ASPC", PowerScheme::Aspc)
      .value("ARPC", PowerScheme::Arpc);

  py::class_<PowerControlResult>(m, "PowerControlResult")
      .def_readonly("scheme", &PowerControlResult::scheme)
      .def_readonly("k_min", &PowerControlResult::k_min)
      .def_readonly("k_min_capped", &PowerControlResult::k_min_capped)
      .def_readonly("backhaul_rate_bps", &PowerControlResult::backhaul_rate_bps);

  m.def("mspc_coefficient", &mspc_coefficient, py::arg("cfg"), py::arg("topology"), py::arg("dist"));
  m.def("aspc_coefficient", &aspc_coefficient, py::arg("cfg"), py::arg("topology"), py::arg("dist"));
  m.def("arpc_coefficient", &arpc_coefficient, py::arg("cfg"), py::arg("topology"), py::arg("dist"));
  m.def("cap_coefficient", &cap_coefficient, py::arg("k"));
  m.def("power_control", &power_control, py::arg("scheme"), py::arg("cfg"), py::arg("topology"),
        py::arg("dist"));

  py::class_<MonteCarloBbo>(m, "MonteCarloBbo")
      .def_readonly("probability", &MonteCarloBbo::probability)
      .def_readonly("std_error", &MonteCarloBbo::std_error)
      .def_readonly("trials", &MonteCarloBbo::trials);

  m.def("occupancy_pmf", &occupancy_pmf, py::arg("n_bs"), py::arg("m_ues"));
  m.def("bbo_analytic", &bbo_analytic, py::arg("cfg"), py::arg("topology"), py::arg("dist"),
        py::arg("k_b"), py::arg("m_ues"));
  m.def("bbo_monte_carlo", &bbo_monte_carlo, py::arg("cfg"), py::arg("topology"), py::arg("dist"),
        py::arg("k_b"), py::arg("m_ues"), py::arg("trials"), py::arg("seed"),
        py::arg("workers") = 1);
  m.def("mmse_beta", [](const std::vector<int>& counts) {
    return mmse_beta(std::span<const int>(counts.data(), counts.size()));
  }, py::arg("per_cell_counts"));

  m.def("sample_realization", &sample_realization, py::arg("topology"), py::arg("dist"),
        py::arg("m_ues"), py::arg("seed"), py::arg("branch") = 1);

  py::enum_<ExperimentKind>(m, "ExperimentKind")
      .value("SUMRATE_VS_KB", ExperimentKind::SumrateVsKb)
      .value("SUMRATE_VS_LAMBDA", ExperimentKind::SumrateVsLambda)
      .value("SUMRATE_VS_NT", ExperimentKind::SumrateVsNt)
      .value("SUMRATE_VS_BW", ExperimentKind::SumrateVsBw)
      .value("PC_COEFFICIENTS", ExperimentKind::PcCoefficients)
      .value("BBO_VS_KB", ExperimentKind::BboVsKb)
      .value("BBO_GRID", ExperimentKind::BboGrid);

  py::enum_<PolicySeries>(m, "PolicySeries")
      .value("UBS_OPT", PolicySeries::UbsOpt)
      .value("UBS_EQL", PolicySeries::UbsEql)
      .value("CBS_OPT", PolicySeries::CbsOpt)
      .value("CBS_EQL", PolicySeries::CbsEql);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("kind", &ExperimentSpec::kind)
      .def_readwrite("nt_grid", &ExperimentSpec::nt_grid)
      .def_readwrite("lambda_grid", &ExperimentSpec::lambda_grid)
      .def_readwrite("kb_grid", &ExperimentSpec::kb_grid)
      .def_readwrite("bw_grid", &ExperimentSpec::bw_grid)
      .def_readwrite("policies", &ExperimentSpec::policies)
      .def_readwrite("schemes", &ExperimentSpec::schemes)
      .def_readwrite("nt", &ExperimentSpec::nt)
      .def_readwrite("lambda_density", &ExperimentSpec::lambda)
      .def_readwrite("kb", &ExperimentSpec::kb)
      .def_readwrite("bw_ratio", &ExperimentSpec::bw_ratio)
      .def_readwrite("realizations", &ExperimentSpec::realizations)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def_readwrite("workers", &ExperimentSpec::workers)
      .def_readwrite("out_path", &ExperimentSpec::out_path)
      .def_readwrite("solver", &ExperimentSpec::solver);

  m.def("default_spec", &default_spec, py::arg("kind"));
  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("points"));
  m.def("run_experiment_csv", [](const ExperimentSpec& spec, const SystemConfig& cfg) {
    return csv_string(run_experiment(spec, cfg));
  }, py::arg("spec"), py::arg("cfg"));
}
