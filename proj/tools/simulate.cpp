// Experiment driver: runs one experiment family over its sweep grid and
// writes the result table as CSV.
//
//   simulate <experiment> [--config file] [--seed N] [--out path] ...
//   simulate topology --nt 3 --out topo.csv
//
// Exit codes: 0 success, 2 invalid spec/config, 3 numerical failure.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "supercell/experiment.hpp"
#include "supercell/topology.hpp"

namespace {

using namespace supercell;

struct CommonArgs {
  std::string config_path;
  std::string out_path = "-";
  std::uint64_t seed = 1;
  int workers = 4;
  int realizations = -1;
  long trials = -1;
  std::vector<int> nt;
  std::vector<double> lambda;
  std::vector<double> kb;
  std::vector<double> bw_ratio;
  std::vector<std::string> policies;
  std::vector<std::string> schemes;
  std::string projection = "exact";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key = value config file; flags override it");
  cmd->add_option("--seed", args.seed, "RNG seed");
  cmd->add_option("--out", args.out_path, "output CSV path, '-' for stdout");
  cmd->add_option("--workers", args.workers, "parallel workers (output is worker-independent)");
  cmd->add_option("--realizations", args.realizations, "Monte Carlo realizations per grid point");
  cmd->add_option("--trials", args.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--nt", args.nt, "tier count (repeat to sweep where applicable)");
  cmd->add_option("--lambda", args.lambda, "UE density per cell (repeat to sweep)");
  cmd->add_option("--kb", args.kb, "backhaul power ratio (repeat to sweep)");
  cmd->add_option("--bw-ratio", args.bw_ratio, "backhaul/access bandwidth ratio (repeat to sweep)");
  cmd->add_option("--policy", args.policies, "UBS-OPT, UBS-EQL, CBS-OPT, CBS-EQL");
  cmd->add_option("--scheme", args.schemes, "NPC, MSPC, ASPC, ARPC");
  cmd->add_option("--projection", args.projection,
                  "feasibility restoration: exact (simplex projection) or clip");
}

ExperimentSpec build_spec(ExperimentKind kind, const CommonArgs& args) {
  ExperimentSpec spec = default_spec(kind);
  spec.seed = args.seed;
  spec.workers = args.workers;
  spec.out_path = args.out_path;
  if (args.realizations >= 0) spec.realizations = args.realizations;
  if (args.trials >= 0) spec.trials = args.trials;
  if (args.projection == "clip") {
    spec.solver.exact_simplex_projection = false;
  } else if (args.projection != "exact") {
    throw CLI::ValidationError("--projection must be 'exact' or 'clip'");
  }
  if (!args.policies.empty()) {
    spec.policies.clear();
    for (const auto& p : args.policies) spec.policies.push_back(policy_from_name(p));
  }
  if (!args.schemes.empty()) {
    spec.schemes.clear();
    for (const auto& s : args.schemes) spec.schemes.push_back(scheme_from_name(s));
  }

  // Scalar flags pin fixed dimensions; repeated flags replace sweep grids.
  switch (kind) {
    case ExperimentKind::SumrateVsKb:
      if (!args.kb.empty()) spec.kb_grid = args.kb;
      if (!args.nt.empty()) spec.nt = args.nt.front();
      if (!args.lambda.empty()) spec.lambda = args.lambda.front();
      if (!args.bw_ratio.empty()) spec.bw_ratio = args.bw_ratio.front();
      break;
    case ExperimentKind::SumrateVsLambda:
      if (!args.lambda.empty()) spec.lambda_grid = args.lambda;
      if (!args.nt.empty()) spec.nt = args.nt.front();
      if (!args.kb.empty()) spec.kb = args.kb.front();
      if (!args.bw_ratio.empty()) spec.bw_ratio = args.bw_ratio.front();
      break;
    case ExperimentKind::SumrateVsNt:
      if (!args.nt.empty()) spec.nt_grid = args.nt;
      if (!args.lambda.empty()) spec.lambda = args.lambda.front();
      if (!args.kb.empty()) {
        spec.kb = args.kb.front();
        spec.schemes.clear();  // an explicit ratio overrides scheme-driven power
      }
      if (!args.bw_ratio.empty()) spec.bw_ratio = args.bw_ratio.front();
      break;
    case ExperimentKind::SumrateVsBw:
      if (!args.bw_ratio.empty()) spec.bw_grid = args.bw_ratio;
      if (!args.nt.empty()) spec.nt = args.nt.front();
      if (!args.lambda.empty()) spec.lambda = args.lambda.front();
      if (!args.kb.empty()) spec.kb = args.kb.front();
      break;
    case ExperimentKind::PcCoefficients:
      if (!args.nt.empty()) spec.nt_grid = args.nt;
      if (!args.bw_ratio.empty()) spec.bw_grid = args.bw_ratio;
      break;
    case ExperimentKind::BboVsKb:
      if (!args.nt.empty()) spec.nt_grid = args.nt;
      if (!args.lambda.empty()) spec.lambda_grid = args.lambda;
      if (!args.kb.empty()) spec.kb_grid = args.kb;
      if (!args.bw_ratio.empty()) spec.bw_ratio = args.bw_ratio.front();
      break;
    case ExperimentKind::BboGrid:
      if (!args.nt.empty()) spec.nt_grid = args.nt;
      if (!args.lambda.empty()) spec.lambda_grid = args.lambda;
      if (!args.bw_ratio.empty()) spec.bw_ratio = args.bw_ratio.front();
      break;
  }
  return spec;
}

int write_output(const std::string& path, const std::string& payload) {
  if (path == "-") {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return 2;
  }
  out << payload;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-tier attocell super-cell simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::pair<ExperimentKind, CLI::App*>> commands;
  for (ExperimentKind kind :
       {ExperimentKind::SumrateVsKb, ExperimentKind::SumrateVsLambda, ExperimentKind::SumrateVsNt,
        ExperimentKind::SumrateVsBw, ExperimentKind::PcCoefficients, ExperimentKind::BboVsKb,
        ExperimentKind::BboGrid}) {
    CLI::App* cmd = app.add_subcommand(kind_name(kind), "run the " + kind_name(kind) + " experiment");
    add_common(cmd, args);
    commands.emplace_back(kind, cmd);
  }
  CLI::App* topo_cmd = app.add_subcommand("topology", "dump the super-cell topology as CSV");
  int topo_nt = 3;
  double topo_radius = 2.5;
  std::string topo_out = "-";
  topo_cmd->add_option("--nt", topo_nt, "tier count");
  topo_cmd->add_option("--cell-radius", topo_radius, "hexagonal cell radius, meters");
  topo_cmd->add_option("--out", topo_out, "output CSV path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (topo_cmd->parsed()) {
      std::ostringstream out;
      write_topology_csv(build_super_cell(topo_nt, topo_radius), out);
      return write_output(topo_out, out.str());
    }
    for (const auto& [kind, cmd] : commands) {
      if (!cmd->parsed()) continue;
      const SystemConfig cfg =
          args.config_path.empty() ? SystemConfig{} : parse_config_file(args.config_path);
      cfg.validate();
      const ExperimentSpec spec = build_spec(kind, args);
      const ResultTable table = run_experiment(spec, cfg);
      return write_output(spec.out_path, csv_string(table));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
