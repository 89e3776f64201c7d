#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "supercell/rng.hpp"
#include "supercell/scheduler.hpp"
#include "support.hpp"

using namespace supercell;

TEST_CASE("equal schedule") {
  CHECK(equal_schedule(1) == std::vector<double>{1.0});
  CHECK(equal_schedule(3) == std::vector<double>(3, 1.0 / 3.0));
  const std::vector<double> v = equal_schedule(15);
  CHECK(std::accumulate(v.begin(), v.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(equal_schedule(0), std::invalid_argument);
}

TEST_CASE("hyperplane projection") {
  const std::vector<double> zeros = hyperplane_project({1.0, 1.0, 1.0});
  for (double v : zeros) CHECK(v == doctest::Approx(0.0));

  const std::vector<double> ortho = {0.5, -0.25, -0.25};
  CHECK(hyperplane_project(ortho) == ortho);

  Rng rng = Rng::substream(3, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> g(4);
    for (double& x : g) x = rng.next_unit();
    const std::vector<double> once = hyperplane_project(g);
    const std::vector<double> twice = hyperplane_project(once);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(twice[i] == doctest::Approx(once[i]).epsilon(1e-12));
    }
    CHECK(std::accumulate(once.begin(), once.end(), 0.0) == doctest::Approx(0.0));
  }
}

TEST_CASE("simplex projection") {
  CHECK(project_to_simplex({2.0, 0.0}) == std::vector<double>{1.0, 0.0});
  CHECK(project_to_simplex({0.5, 0.5}) == std::vector<double>{0.5, 0.5});
  const std::vector<double> mid = project_to_simplex({1.0, 1.0});
  CHECK(mid[0] == doctest::Approx(0.5));
  CHECK(mid[1] == doctest::Approx(0.5));

  Rng rng = Rng::substream(3, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(2 + rng.next_below(14));
    for (double& x : v) x = 4.0 * rng.next_unit() - 2.0;
    const std::vector<double> p = project_to_simplex(v);
    double sum = 0.0;
    for (double x : p) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("user-based subgradient") {
  const CellRates rho = {{0.1, 0.2}, {0.5}, {}};
  // share above every normalized rate: no unsatisfied users
  CHECK(ubs_subgradient(std::vector<double>{0.3, 0.6, 0.1}, rho)[0] == 0.0);
  // zero share: every user counts (normalized rates are positive)
  CHECK(ubs_subgradient(std::vector<double>{0.0, 0.6, 0.4}, rho)[0] == 1.0);
  // empty cell pins its component to zero
  CHECK(ubs_subgradient(std::vector<double>{0.3, 0.3, 0.4}, rho)[2] == 0.0);

  const CellRates five = {{0.1, 0.2, 0.3, 0.8, 0.9}};
  CHECK(ubs_subgradient(std::vector<double>{0.5}, five)[0] == doctest::Approx(0.4));
  // ties count as unsatisfied
  CHECK(ubs_subgradient(std::vector<double>{0.3}, five)[0] == doctest::Approx(0.6));
}

TEST_CASE("cell-based subgradient") {
  const CellRates rho = {{0.1, 0.3}, {0.5}, {}};
  CHECK(cbs_subgradient(std::vector<double>{0.0, 0.5, 0.5}, rho)[0] == 1.0);
  CHECK(cbs_subgradient(std::vector<double>{1.0, 0.0, 0.0}, rho)[0] == 0.0);
  // boundary equality keeps the component active
  CHECK(cbs_subgradient(std::vector<double>{0.2, 0.4, 0.4}, rho)[0] == 1.0);
  CHECK(cbs_subgradient(std::vector<double>{0.3, 0.3, 0.4}, rho)[2] == 0.0);
}

TEST_CASE("single cell optimization is immediate") {
  const CellRates rho = {{0.4, 0.8}};
  const ScheduleSolution sol = optimize(Policy::Ubs, rho, {});
  CHECK(sol.mu == std::vector<double>{1.0});
  CHECK(sol.iterations == 0);
  CHECK(sol.converged);
  CHECK(sol.objective == doctest::Approx(0.5 * (0.4 + 0.8)));
}

TEST_CASE("two cell cell-based example") {
  // caps 0.2 and 0.9: any split with the first share in [0.1, 0.2] attains 1
  const CellRates rho = {{0.2}, {0.9}};
  const double oracle = grid_oracle(Policy::Cbs, rho, 1e-4);
  CHECK(oracle == doctest::Approx(1.0).epsilon(1e-9));
  const ScheduleSolution sol = optimize(Policy::Cbs, rho, {});
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.objective >= oracle - 1e-3);
}

TEST_CASE("random instances meet the grid oracle") {
  Rng rng = Rng::substream(101, 7);
  for (int inst = 0; inst < 30; ++inst) {
    const int n = 2 + rng.next_below(2);
    CellRates rho = testsupport::random_instance(rng, n, 1 + rng.next_below(9));
    if (rho.size() == static_cast<std::size_t>(n)) {
      bool occupied = false;
      for (const auto& c : rho) occupied = occupied || !c.empty();
      if (!occupied) rho[0].push_back(0.5);
    }
    for (Policy p : {Policy::Ubs, Policy::Cbs}) {
      const double oracle = grid_oracle(p, rho, n == 2 ? 1e-4 : 1e-3);
      const ScheduleSolution sol = optimize(p, rho, {});
      CHECK(sol.objective >= oracle - 1e-3);
      const double eq = objective(p, equal_schedule(n), rho);
      CHECK(sol.objective >= eq - 1e-15);
      // feasibility of the returned iterate
      double sum = 0.0;
      for (double x : sol.mu) {
        CHECK(x >= -1e-12);
        sum += x;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("best objective trace is nondecreasing") {
  Rng rng = Rng::substream(101, 8);
  CellRates rho = testsupport::random_instance(rng, 3, 7);
  if (rho[0].empty() && rho[1].empty() && rho[2].empty()) rho[0].push_back(0.4);
  SolverSettings settings;
  settings.record_trace = true;
  const ScheduleSolution sol = optimize(Policy::Ubs, rho, settings);
  REQUIRE(!sol.trace.empty());
  for (std::size_t i = 1; i < sol.trace.size(); ++i) CHECK(sol.trace[i] >= sol.trace[i - 1]);
}

TEST_CASE("iteration cap reports non-convergence as a flagged result") {
  const CellRates rho = {{0.2}, {0.9}};
  SolverSettings settings;
  settings.max_iterations = 3;
  const ScheduleSolution sol = optimize(Policy::Cbs, rho, settings);
  CHECK(!sol.converged);
  CHECK(sol.iterations == 3);
  CHECK(sol.objective >= objective(Policy::Cbs, equal_schedule(2), rho) - 1e-15);
}

TEST_CASE("objective scales with the caps on small cell-based instances") {
  // caps summing below one: the optimum equals the cap total, so a positive
  // rescale of the caps rescales the optimum exactly
  const CellRates rho = {{0.2}, {0.35}};
  const double base = grid_oracle(Policy::Cbs, rho, 1e-4);
  CHECK(base == doctest::Approx(0.55).epsilon(1e-9));
  for (double c : {0.5, 1.5}) {
    CellRates scaled = rho;
    for (auto& cell : scaled) {
      for (double& v : cell) v *= c;
    }
    const double val = grid_oracle(Policy::Cbs, scaled, 1e-4);
    CHECK(val == doctest::Approx(c * base).epsilon(1e-6));
    const ScheduleSolution sol = optimize(Policy::Cbs, scaled, {});
    CHECK(sol.objective == doctest::Approx(c * base).epsilon(1e-4));
  }
}

TEST_CASE("grid oracle behavior") {
  // symmetric caps: the equal split is among the maximizers
  const CellRates sym = {{0.4}, {0.4}, {0.4}};
  const double oracle = grid_oracle(Policy::Cbs, sym, 1e-3);
  CHECK(oracle == doctest::Approx(objective(Policy::Cbs, equal_schedule(3), sym)).epsilon(1e-12));

  // refining the grid moves the value by less than the per-step bound
  const CellRates rho = {{0.13, 0.7}, {0.4}};
  const double coarse = grid_oracle(Policy::Ubs, rho, 2e-3);
  const double fine = grid_oracle(Policy::Ubs, rho, 1e-3);
  CHECK(std::abs(fine - coarse) <= 2.0 * 2e-3);
  CHECK(fine >= coarse - 1e-12);

  CHECK_THROWS_AS(grid_oracle(Policy::Ubs, CellRates(4), 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(optimize(Policy::Ubs, CellRates{{}, {}}, {}), std::invalid_argument);
}

TEST_CASE("clip and renormalize mode stays feasible") {
  SolverSettings clip;
  clip.exact_simplex_projection = false;
  Rng rng = Rng::substream(101, 9);
  for (int inst = 0; inst < 10; ++inst) {
    CellRates rho = testsupport::random_instance(rng, 3, 6);
    bool occupied = false;
    for (const auto& c : rho) occupied = occupied || !c.empty();
    if (!occupied) rho[1].push_back(0.3);
    const ScheduleSolution sol = optimize(Policy::Cbs, rho, clip);
    double sum = 0.0;
    for (double x : sol.mu) {
      CHECK(x >= 0.0);
      sum += x;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
    CHECK(sol.objective >= objective(Policy::Cbs, equal_schedule(3), rho) - 1e-15);
  }
}
