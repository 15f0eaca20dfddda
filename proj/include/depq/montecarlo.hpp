#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depq/models.hpp"

namespace depq {

struct SimConfig {
  std::uint64_t seed = 1;
  long n_customers = 1000000;  ///< per replication, after warmup
  long warmup = 10000;
  int batches = 50;       ///< batch means per replication
  int replications = 1;   ///< independent streams (seed, r), run concurrently
  long n_paths = 100000;  ///< ruin paths
};

/// point +- z * std_error
struct SimEstimate {
  double point = 0.0;
  double std_error = 0.0;
  long n = 0;

  bool covers(double value, double z = 3.0) const { return std::abs(value - point) <= z * std_error; }
};

struct WaitingSim {
  SimEstimate meanW;
  SimEstimate atomW;  ///< fraction of customers with W = 0 exactly
  std::vector<double> tail_grid;
  std::vector<SimEstimate> tail;  ///< P(W > u)
  std::vector<double> lst_grid;
  std::vector<SimEstimate> lst;  ///< E exp(-sW)
  SimEstimate busy_cycle_customers;  ///< mean number served per busy cycle (iid cycles)
};

/// Lindley recursion from W = 0 with batch means over the post-warmup customers.
WaitingSim simulate_waiting(const DependenceModel& m, const SimConfig& cfg, const std::vector<double>& tail_grid = {},
                            const std::vector<double>& lst_grid = {});

struct WorkloadSim {
  SimEstimate empty;  ///< P(V = 0), time fraction
  std::vector<double> grid;
  std::vector<SimEstimate> tail;  ///< P(V > v), time fraction
};

/// Time averages of the piecewise-linear workload path.
WorkloadSim simulate_workload(const DependenceModel& m, const SimConfig& cfg, const std::vector<double>& grid);

struct RuinSim {
  SimEstimate psi;
  double horizon = 0.0;  ///< estimate is P(ruin before horizon), a lower bound for the ruin probability
};

/// Stationary start: the first pair is the residual pair.
RuinSim simulate_delayed_ruin(const DependenceModel& m, const SimConfig& cfg, double u, double horizon);
/// Start at a claim epoch.
RuinSim simulate_ordinary_ruin(const DependenceModel& m, const SimConfig& cfg, double u, double horizon);

/// 50 E A K worth of time, K the largest mixture order (1 for non-finite mixing).
double default_ruin_horizon(const DependenceModel& m);

struct OrderingReport {
  std::vector<double> t_grid;
  /// exact E(D - t)_+, D = A - B/c, for positive / independent / negative
  std::vector<double> exact_pos, exact_ind, exact_neg;
  /// common-random-number estimates of the same
  std::vector<SimEstimate> mc_pos, mc_ind, mc_neg;
  std::vector<double> mean_d;  ///< E D per scenario
  bool symmetric = false;
  bool means_equal = false;
  bool first_holds = true;   ///< D+ <= D0 on the grid (exact)
  bool second_holds = true;  ///< D0 <= D- on the grid (exact)
  std::vector<double> first_violations, second_violations;  ///< offending t
  bool mc_first_flag = false;   ///< MC difference beyond 3 std errors
  bool mc_second_flag = false;
};

/// Stop-loss curves of D for the three scenarios built from `weights` (c = 1).
/// With `strict`, an exact-path violation of an ordering that the weights promise
/// (the second one only for symmetric weights) throws OrderingViolation.
OrderingReport ordering_check(const std::vector<double>& weights, double lambda, double mu, const SimConfig& cfg,
                              const std::vector<double>& t_grid, bool strict = false);

/// n evenly spaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace depq
