#include "supercell/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "supercell/bbo.hpp"
#include "supercell/rng.hpp"
#include "supercell/sampling.hpp"

namespace supercell {

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SumrateVsKb: return "sumrate-vs-kb";
    case ExperimentKind::SumrateVsLambda: return "sumrate-vs-lambda";
    case ExperimentKind::SumrateVsNt: return "sumrate-vs-nt";
    case ExperimentKind::SumrateVsBw: return "sumrate-vs-bw";
    case ExperimentKind::PcCoefficients: return "pc-coefficients";
    case ExperimentKind::BboVsKb: return "bbo-vs-kb";
    case ExperimentKind::BboGrid: return "bbo-grid";
  }
  return "?";
}

ExperimentKind kind_from_name(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::SumrateVsKb, ExperimentKind::SumrateVsLambda,
                           ExperimentKind::SumrateVsNt, ExperimentKind::SumrateVsBw,
                           ExperimentKind::PcCoefficients, ExperimentKind::BboVsKb,
                           ExperimentKind::BboGrid}) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::string policy_name(PolicySeries p) {
  switch (p) {
    case PolicySeries::UbsOpt: return "UBS-OPT";
    case PolicySeries::UbsEql: return "UBS-EQL";
    case PolicySeries::CbsOpt: return "CBS-OPT";
    case PolicySeries::CbsEql: return "CBS-EQL";
  }
  return "?";
}

PolicySeries policy_from_name(const std::string& name) {
  for (PolicySeries p : {PolicySeries::UbsOpt, PolicySeries::UbsEql, PolicySeries::CbsOpt,
                         PolicySeries::CbsEql}) {
    if (policy_name(p) == name) return p;
  }
  throw std::invalid_argument("unknown policy '" + name + "'");
}

std::string format_double(double x) {
  std::array<char, 40> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), p);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi > lo) || points < 2) {
    throw std::invalid_argument("log_grid: need 0 < lo < hi and at least two points");
  }
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
  }
  g.back() = hi;
  return g;
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("experiment spec: " + m); };
  auto need = [&](bool ok, const std::string& m) { if (!ok) fail(m); };
  const bool sumrate = kind == ExperimentKind::SumrateVsKb ||
                       kind == ExperimentKind::SumrateVsLambda ||
                       kind == ExperimentKind::SumrateVsNt ||
                       kind == ExperimentKind::SumrateVsBw;
  if (sumrate) {
    need(realizations >= 1, "realizations must be >= 1");
    need(!policies.empty(), "at least one policy series required");
  }
  switch (kind) {
    case ExperimentKind::SumrateVsKb: need(!kb_grid.empty(), "kb grid required"); break;
    case ExperimentKind::SumrateVsLambda: need(!lambda_grid.empty(), "lambda grid required"); break;
    case ExperimentKind::SumrateVsNt:
      need(!nt_grid.empty(), "nt grid required");
      break;
    case ExperimentKind::SumrateVsBw: need(!bw_grid.empty(), "bandwidth-ratio grid required"); break;
    case ExperimentKind::PcCoefficients:
      need(!nt_grid.empty() && !bw_grid.empty(), "nt and bandwidth-ratio grids required");
      need(!schemes.empty(), "at least one power scheme required");
      break;
    case ExperimentKind::BboVsKb:
      need(!nt_grid.empty() && !lambda_grid.empty() && !kb_grid.empty(),
           "nt, lambda and kb grids required");
      need(trials >= 1, "trials must be >= 1");
      break;
    case ExperimentKind::BboGrid:
      need(!nt_grid.empty() && !lambda_grid.empty(), "nt and lambda grids required");
      need(!schemes.empty(), "at least one power scheme required");
      need(trials >= 0, "trials must be >= 0");
      break;
  }
  for (int n : nt_grid) need(n >= 1, "nt values must be >= 1");
  for (double l : lambda_grid) need(l > 0, "lambda values must be positive");
  for (double k : kb_grid) need(k >= 0, "kb values must be nonnegative");
  for (double b : bw_grid) need(b > 0, "bandwidth ratios must be positive");
  need(nt >= 1, "nt must be >= 1");
  need(lambda > 0, "lambda must be positive");
  need(kb >= 0, "kb must be nonnegative");
  need(bw_ratio > 0, "bandwidth ratio must be positive");
  need(workers >= 1, "workers must be >= 1");
}

ExperimentSpec default_spec(ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  const std::vector<PolicySeries> all_policies = {PolicySeries::UbsOpt, PolicySeries::UbsEql,
                                                  PolicySeries::CbsOpt, PolicySeries::CbsEql};
  switch (kind) {
    case ExperimentKind::SumrateVsKb:
      s.kb_grid = log_grid(1e-4, 1.0, 20);
      s.policies = all_policies;
      s.nt = 5;
      s.lambda = 1.0;
      break;
    case ExperimentKind::SumrateVsLambda:
      for (int l = 1; l <= 10; ++l) s.lambda_grid.push_back(l);
      s.policies = all_policies;
      s.nt = 5;
      break;
    case ExperimentKind::SumrateVsNt:
      s.nt_grid = {1, 2, 3, 4, 5};
      s.policies = {PolicySeries::CbsOpt};
      s.schemes = {PowerScheme::Npc, PowerScheme::Mspc, PowerScheme::Aspc, PowerScheme::Arpc};
      s.lambda = 5.0;
      break;
    case ExperimentKind::SumrateVsBw:
      for (double b = 1.0; b <= 4.0 + 1e-9; b += 0.5) s.bw_grid.push_back(b);
      s.policies = all_policies;
      s.nt = 5;
      s.lambda = 1.0;
      break;
    case ExperimentKind::PcCoefficients:
      s.nt_grid = {1, 2, 3, 4, 5};
      s.bw_grid = {1.0, 2.0, 3.0, 4.0};
      s.schemes = {PowerScheme::Mspc, PowerScheme::Aspc, PowerScheme::Arpc};
      break;
    case ExperimentKind::BboVsKb:
      s.nt_grid = {1, 3, 5};
      s.lambda_grid = {1.0, 5.0};
      s.kb_grid = log_grid(1e-4, 1.0, 20);
      break;
    case ExperimentKind::BboGrid:
      s.nt_grid = {1, 2, 3, 4, 5};
      s.lambda_grid = {1.0, 2.0, 3.0, 4.0, 5.0};
      s.schemes = {PowerScheme::Npc, PowerScheme::Mspc, PowerScheme::Aspc, PowerScheme::Arpc};
      s.trials = 0;
      break;
  }
  return s;
}

namespace {

constexpr const char* kReconstructionNote =
    "absolute rates depend on numerically reconstructed co-channel interference "
    "profiles (truncated lattice sums); absolute levels may shift against results "
    "derived from closed-form profiles";

void parallel_for(long n, int workers, const std::function<void(long)>& fn) {
  if (n <= 0) return;
  workers = std::max(1, workers);
  if (workers > n) workers = static_cast<int>(n);
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (long i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return Rng::substream(seed, a, b, c).next_u64();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe reduce(const std::vector<double>& values) {
  const long n = static_cast<long>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;  // fixed index order
  const double mean = sum / n;
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

struct SumratePoint {
  int nt = 0;
  double lambda = 0.0;
  double kb = 0.0;
  double bw_ratio = 0.0;
  std::string scheme = "-";
};

// Evaluates all requested series at one sum-rate grid point and appends the
// rows. Realizations are keyed by (seed, branch size, UE count, index) so a
// worker-count change cannot alter them.
void run_sumrate_point(const ExperimentSpec& spec, const SystemConfig& cfg_pt,
                       const SuperCellTopology& topo, const SinrDistribution& dist,
                       const SumratePoint& pt, ResultTable& table) {
  const int m_ues = static_cast<int>(std::lround(pt.lambda * topo.n_bs_per_branch));
  const int n_series = static_cast<int>(spec.policies.size());
  const long reals = spec.realizations;
  std::vector<double> values(static_cast<std::size_t>(reals) * (n_series + 1));
  std::vector<unsigned char> nonconverged(static_cast<std::size_t>(reals) * n_series, 0);

  parallel_for(reals, spec.workers, [&](long r) {
    const std::uint64_t rs = derive_seed(spec.seed, topo.n_bs_per_branch, m_ues, r);
    const UeRealization real = sample_realization(topo, dist, m_ues, rs);
    const bool occupied = real.total_ues() > 0;
    CellRates rho;
    if (occupied && pt.kb > 0.0) rho = normalized_ue_rates(real, pt.kb, cfg_pt);
    ScheduleSolution ubs_sol, cbs_sol;
    bool have_ubs = false, have_cbs = false;
    for (int s = 0; s < n_series; ++s) {
      const PolicySeries ps = spec.policies[s];
      double value = 0.0;
      bool converged = true;
      if (occupied) {
        const bool is_ubs = ps == PolicySeries::UbsOpt || ps == PolicySeries::UbsEql;
        const Policy pol = is_ubs ? Policy::Ubs : Policy::Cbs;
        std::vector<double> mu;
        if (ps == PolicySeries::UbsOpt || ps == PolicySeries::CbsOpt) {
          if (pt.kb > 0.0) {
            ScheduleSolution& sol = is_ubs ? ubs_sol : cbs_sol;
            bool& have = is_ubs ? have_ubs : have_cbs;
            if (!have) {
              sol = optimize(pol, rho, spec.solver);
              have = true;
            }
            mu = sol.mu;
            converged = sol.converged;
          } else {
            mu = equal_schedule(topo.n_bs_per_branch);  // zero backhaul: nothing to optimize
          }
        } else {
          mu = equal_schedule(topo.n_bs_per_branch);
        }
        const ScheduleVector sched{real.branch, std::move(mu)};
        value = branch_sum_rate(pol, sched, real, pt.kb, cfg_pt, topo);
      }
      values[static_cast<std::size_t>(r) * (n_series + 1) + s] = value;
      nonconverged[static_cast<std::size_t>(r) * n_series + s] = converged ? 0 : 1;
    }
    double access = 0.0;
    for (int cell = 0; cell < real.n_cells(); ++cell) access += access_sum_rate(cell, real, cfg_pt);
    values[static_cast<std::size_t>(r) * (n_series + 1) + n_series] = access;
  });

  auto emit = [&](const std::string& policy, const MeanSe& ms, long bad) {
    table.rows.push_back({std::to_string(pt.nt), format_double(pt.lambda),
                          format_double(pt.bw_ratio), format_double(pt.kb), policy, pt.scheme,
                          format_double(ms.mean), format_double(ms.se),
                          std::to_string(spec.realizations), std::to_string(bad)});
  };

  std::vector<double> column(reals);
  for (int s = 0; s < n_series; ++s) {
    for (long r = 0; r < reals; ++r) column[r] = values[static_cast<std::size_t>(r) * (n_series + 1) + s];
    long bad = 0;
    for (long r = 0; r < reals; ++r) bad += nonconverged[static_cast<std::size_t>(r) * n_series + s];
    emit(policy_name(spec.policies[s]), reduce(column), bad);
  }
  for (long r = 0; r < reals; ++r) column[r] = values[static_cast<std::size_t>(r) * (n_series + 1) + n_series];
  emit("ACCESS-LIMIT", reduce(column), 0);
  emit("BACKHAUL-LIMIT", {backhaul_rate(pt.kb, cfg_pt), 0.0}, 0);
}

const std::vector<std::string> kSumrateColumns = {
    "nt", "lambda", "bw_ratio", "kb", "policy", "scheme",
    "mean_bps", "stderr_bps", "realizations", "nonconverged"};

}  // namespace

ResultTable run_experiment(const ExperimentSpec& spec, const SystemConfig& cfg) {
  spec.validate();
  cfg.validate();

  ResultTable table;
  table.metadata.emplace_back("version", std::string("supercell-simulate ") + kVersion);
  table.metadata.emplace_back("experiment", kind_name(spec.kind));
  table.metadata.emplace_back("seed", std::to_string(spec.seed));
  {
    std::ostringstream hex;
    hex << std::hex << config_hash(cfg);
    table.metadata.emplace_back("config_hash", hex.str());
  }

  const bool sumrate = spec.kind == ExperimentKind::SumrateVsKb ||
                       spec.kind == ExperimentKind::SumrateVsLambda ||
                       spec.kind == ExperimentKind::SumrateVsNt ||
                       spec.kind == ExperimentKind::SumrateVsBw;
  if (sumrate) {
    table.metadata.emplace_back("realizations", std::to_string(spec.realizations));
    table.metadata.emplace_back("note", kReconstructionNote);
    table.columns = kSumrateColumns;
  }

  // The SINR distribution depends only on the access side, which no sweep
  // touches; one instance serves every grid point.
  const SinrDistribution dist(cfg);

  switch (spec.kind) {
    case ExperimentKind::SumrateVsKb: {
      const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, spec.bw_ratio);
      const SuperCellTopology topo = build_super_cell(spec.nt, cfg.cell_radius_m);
      for (double kb : spec.kb_grid) {
        run_sumrate_point(spec, cfg_pt, topo, dist,
                          {spec.nt, spec.lambda, kb, spec.bw_ratio, "-"}, table);
      }
      break;
    }
    case ExperimentKind::SumrateVsLambda: {
      const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, spec.bw_ratio);
      const SuperCellTopology topo = build_super_cell(spec.nt, cfg.cell_radius_m);
      for (double lambda : spec.lambda_grid) {
        run_sumrate_point(spec, cfg_pt, topo, dist,
                          {spec.nt, lambda, spec.kb, spec.bw_ratio, "-"}, table);
      }
      break;
    }
    case ExperimentKind::SumrateVsNt: {
      const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, spec.bw_ratio);
      for (int nt : spec.nt_grid) {
        const SuperCellTopology topo = build_super_cell(nt, cfg.cell_radius_m);
        if (spec.schemes.empty()) {
          run_sumrate_point(spec, cfg_pt, topo, dist,
                            {nt, spec.lambda, spec.kb, spec.bw_ratio, "-"}, table);
        } else {
          for (PowerScheme scheme : spec.schemes) {
            const PowerControlResult pc = power_control(scheme, cfg_pt, topo, dist);
            run_sumrate_point(spec, cfg_pt, topo, dist,
                              {nt, spec.lambda, pc.k_min_capped, spec.bw_ratio,
                               scheme_name(scheme)},
                              table);
          }
        }
      }
      break;
    }
    case ExperimentKind::SumrateVsBw: {
      const SuperCellTopology topo = build_super_cell(spec.nt, cfg.cell_radius_m);
      for (double bw : spec.bw_grid) {
        const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, bw);
        run_sumrate_point(spec, cfg_pt, topo, dist, {spec.nt, spec.lambda, spec.kb, bw, "-"},
                          table);
      }
      break;
    }
    case ExperimentKind::PcCoefficients: {
      table.columns = {"nt", "bw_ratio", "scheme", "k_min", "k_min_capped", "backhaul_rate_bps"};
      for (int nt : spec.nt_grid) {
        const SuperCellTopology topo = build_super_cell(nt, cfg.cell_radius_m);
        for (double bw : spec.bw_grid) {
          const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, bw);
          for (PowerScheme scheme : spec.schemes) {
            const PowerControlResult pc = power_control(scheme, cfg_pt, topo, dist);
            table.rows.push_back({std::to_string(nt), format_double(bw), scheme_name(scheme),
                                  format_double(pc.k_min), format_double(pc.k_min_capped),
                                  format_double(pc.backhaul_rate_bps)});
          }
        }
      }
      break;
    }
    case ExperimentKind::BboVsKb: {
      table.metadata.emplace_back("trials", std::to_string(spec.trials));
      table.columns = {"nt", "lambda", "bw_ratio", "kb", "method", "probability", "stderr",
                       "trials"};
      const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, spec.bw_ratio);
      for (int nt : spec.nt_grid) {
        const SuperCellTopology topo = build_super_cell(nt, cfg.cell_radius_m);
        for (double lambda : spec.lambda_grid) {
          const int m_ues = std::max<int>(1, std::lround(lambda * topo.n_bs_per_branch));
          const std::uint64_t ps = derive_seed(spec.seed, 0xbb0, topo.n_bs_per_branch, m_ues);
          const std::vector<MonteCarloBbo> mc = bbo_monte_carlo_sweep(
              cfg_pt, topo, dist, spec.kb_grid, m_ues, spec.trials, ps, spec.workers);
          for (std::size_t i = 0; i < spec.kb_grid.size(); ++i) {
            const double kb = spec.kb_grid[i];
            table.rows.push_back({std::to_string(nt), format_double(lambda),
                                  format_double(spec.bw_ratio), format_double(kb), "analytic",
                                  format_double(bbo_analytic(cfg_pt, topo, dist, kb, m_ues)),
                                  format_double(0.0), "0"});
            table.rows.push_back({std::to_string(nt), format_double(lambda),
                                  format_double(spec.bw_ratio), format_double(kb), "montecarlo",
                                  format_double(mc[i].probability), format_double(mc[i].std_error),
                                  std::to_string(mc[i].trials)});
          }
        }
      }
      break;
    }
    case ExperimentKind::BboGrid: {
      table.metadata.emplace_back("trials", std::to_string(spec.trials));
      table.columns = {"nt", "lambda", "scheme", "kb", "method", "probability", "stderr",
                       "trials"};
      const SystemConfig cfg_pt = with_bandwidth_ratio(cfg, spec.bw_ratio);
      for (int nt : spec.nt_grid) {
        const SuperCellTopology topo = build_super_cell(nt, cfg.cell_radius_m);
        for (double lambda : spec.lambda_grid) {
          const int m_ues = std::max<int>(1, std::lround(lambda * topo.n_bs_per_branch));
          for (PowerScheme scheme : spec.schemes) {
            const PowerControlResult pc = power_control(scheme, cfg_pt, topo, dist);
            table.rows.push_back(
                {std::to_string(nt), format_double(lambda), scheme_name(scheme),
                 format_double(pc.k_min_capped), "analytic",
                 format_double(bbo_analytic(cfg_pt, topo, dist, pc.k_min_capped, m_ues)),
                 format_double(0.0), "0"});
            if (spec.trials > 0) {
              const std::uint64_t ps =
                  derive_seed(spec.seed, 0xbb1, topo.n_bs_per_branch, m_ues);
              const MonteCarloBbo mc = bbo_monte_carlo(cfg_pt, topo, dist, pc.k_min_capped,
                                                       m_ues, spec.trials, ps, spec.workers);
              table.rows.push_back({std::to_string(nt), format_double(lambda),
                                    scheme_name(scheme), format_double(pc.k_min_capped),
                                    "montecarlo", format_double(mc.probability),
                                    format_double(mc.std_error), std::to_string(mc.trials)});
            }
          }
        }
      }
      break;
    }
  }
  return table;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i] << (i + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
}

std::string csv_string(const ResultTable& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

}  // namespace supercell
