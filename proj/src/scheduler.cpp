#include "supercell/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace supercell {

std::vector<double> equal_schedule(int n_bs) {
  if (n_bs < 1) throw std::invalid_argument("equal_schedule: n_bs must be >= 1");
  return std::vector<double>(n_bs, 1.0 / n_bs);
}

std::vector<double> hyperplane_project(std::vector<double> v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
  return v;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double prefix = 0.0;
  double theta = 0.0;
  for (int i = 0; i < static_cast<int>(u.size()); ++i) {
    prefix += u[i];
    if (u[i] * (i + 1) > prefix - 1.0) theta = (prefix - 1.0) / (i + 1);
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

std::vector<double> ubs_subgradient(std::span<const double> mu, const CellRates& rho) {
  std::vector<double> g(mu.size(), 0.0);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].empty()) continue;
    int unsat = 0;
    for (double r : rho[i]) {
      if (mu[i] <= r) ++unsat;
    }
    g[i] = static_cast<double>(unsat) / static_cast<double>(rho[i].size());
  }
  return g;
}

std::vector<double> cbs_subgradient(std::span<const double> mu, const CellRates& rho) {
  std::vector<double> g(mu.size(), 0.0);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].empty()) continue;
    const double cap = std::accumulate(rho[i].begin(), rho[i].end(), 0.0) /
                       static_cast<double>(rho[i].size());
    g[i] = mu[i] <= cap ? 1.0 : 0.0;
  }
  return g;
}

double ubs_objective(std::span<const double> mu, const CellRates& rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].empty()) continue;
    double cell = 0.0;
    for (double r : rho[i]) cell += std::min(mu[i], r);
    total += cell / static_cast<double>(rho[i].size());
  }
  return total;
}

double cbs_objective(std::span<const double> mu, const CellRates& rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].empty()) continue;
    const double cap = std::accumulate(rho[i].begin(), rho[i].end(), 0.0) /
                       static_cast<double>(rho[i].size());
    total += std::min(mu[i], cap);
  }
  return total;
}

double objective(Policy policy, std::span<const double> mu, const CellRates& rho) {
  return policy == Policy::Ubs ? ubs_objective(mu, rho) : cbs_objective(mu, rho);
}

ScheduleSolution optimize(Policy policy, const CellRates& rho, const SolverSettings& settings) {
  const int n = static_cast<int>(rho.size());
  if (n < 1) throw std::invalid_argument("optimize: empty instance");
  if (!(settings.step > 0.0)) throw std::invalid_argument("optimize: step must be positive");
  if (settings.max_iterations < 1) throw std::invalid_argument("optimize: iteration cap must be >= 1");
  bool occupied = false;
  for (const auto& cell : rho) occupied = occupied || !cell.empty();
  if (!occupied) throw std::invalid_argument("optimize: branch has no UEs");

  ScheduleSolution sol;
  std::vector<double> mu = equal_schedule(n);
  sol.mu = mu;
  sol.objective = objective(policy, mu, rho);
  if (n == 1) {
    sol.converged = true;
    return sol;
  }

  int stale = 0;
  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    std::vector<double> g = policy == Policy::Ubs ? ubs_subgradient(mu, rho)
                                                  : cbs_subgradient(mu, rho);
    g = hyperplane_project(std::move(g));
    for (int i = 0; i < n; ++i) mu[i] += settings.step * g[i];
    if (settings.exact_simplex_projection) {
      mu = project_to_simplex(std::move(mu));
    } else {
      double sum = 0.0;
      for (double& x : mu) {
        x = std::max(x, 0.0);
        sum += x;
      }
      if (sum > 0.0) {
        for (double& x : mu) x /= sum;
      } else {
        mu = equal_schedule(n);
      }
    }

    const double value = objective(policy, mu, rho);
    sol.iterations = iter + 1;
    if (value > sol.objective + settings.stagnation_rel_tol * std::max(std::abs(sol.objective), 1e-300)) {
      sol.objective = value;
      sol.mu = mu;
      stale = 0;
    } else {
      if (value > sol.objective) {
        sol.objective = value;
        sol.mu = mu;
      }
      ++stale;
    }
    if (settings.record_trace) sol.trace.push_back(sol.objective);
    if (stale >= settings.stagnation_window) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

double grid_oracle(Policy policy, const CellRates& rho, double resolution) {
  const int n = static_cast<int>(rho.size());
  if (n < 1 || n > 3) throw std::invalid_argument("grid_oracle: instances of 1..3 cells only");
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw std::invalid_argument("grid_oracle: resolution must lie in (0, 1]");
  }
  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  double best = -1.0;
  std::vector<double> mu(n, 0.0);
  if (n == 1) {
    mu[0] = 1.0;
    return objective(policy, mu, rho);
  }
  for (int i = 0; i <= steps; ++i) {
    mu[0] = static_cast<double>(i) / steps;
    if (n == 2) {
      mu[1] = 1.0 - mu[0];
      best = std::max(best, objective(policy, mu, rho));
    } else {
      for (int j = 0; j <= steps - i; ++j) {
        mu[1] = static_cast<double>(j) / steps;
        mu[2] = 1.0 - mu[0] - mu[1];
        best = std::max(best, objective(policy, mu, rho));
      }
    }
  }
  return best;
}

}  // namespace supercell
