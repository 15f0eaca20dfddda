#pragma once

#include <string>
#include <vector>

#include "depq/expoly.hpp"
#include "depq/models.hpp"
#include "depq/wienerhopf.hpp"

namespace depq {

struct ScenarioReport {
  DependenceModel model;
  MomentReport moments;
  FactorizationResult factorization;
  double meanW = 0.0;
  double atomW = 0.0;
  double level = 0.95;
  double q = 0.0;  ///< level-quantile of W
  double mean_idle = 0.0;
  ExpPolyMix waiting_tail;        ///< P(W > u)
  ExpPolyMix cw_density;          ///< law of cW: atom + density
  ExpPolyMix bres_density;        ///< (1 - F_B(u)) / E B
  ExpPolyMix workload_tail;       ///< P(V > v); atom0 = P(V = 0)
  ExpPolyMix ordinary_ruin_tail;  ///< Psi0(u) = P(cW > u)
  ExpPolyMix delayed_ruin_tail;   ///< Psi(u), from the Takacs relation
  double max_duality_gap = 0.0;   ///< max |Psi(u) - P(V > u)| over the checkpoints
};

struct AnalyzeOptions {
  double level = 0.95;
  int duality_points = 100;
  double duality_tolerance = 1e-8;
  double workload_atom_tolerance = 1e-9;
  FactorizeOptions factorize;
};

/// Full pipeline. Throws StabilityViolation, RoucheCountMismatch, DualityViolation.
ScenarioReport analyze(const DependenceModel& m, const AnalyzeOptions& options = {});

/// P(V > v) = rho P(cW + B^res > v), by convolving the law of cW with the B^res density.
ExpPolyMix workload_tail(const ExpPolyMix& cw_law, const ExpPolyMix& bres_density, double rho);

/// Psi(u) = rho [P(B^res > u) + (Psi0 * b^res)(u)].
ExpPolyMix takacs_delayed_ruin(const ExpPolyMix& ordinary_ruin, const ExpPolyMix& bres_density, double rho);

double ordinary_ruin(const ScenarioReport& r, double u);
double delayed_ruin(const ScenarioReport& r, double u);

/// Psi0*(s) = (1/s) [1 - E exp(-csW)].
CRational ruin_lst(const FactorizationResult& fr, double c);

enum class RuinKind { Ordinary, Delayed };

/// Smallest u with Psi(u) <= 1 - level.
double var_quantile(const ScenarioReport& r, double level, RuinKind kind = RuinKind::Ordinary);

/// Checkpoints for the duality check: 0 and an even grid on [0, 10 max(c E W, E B)].
std::vector<double> duality_grid(const ScenarioReport& r, int points);

struct SweepEntry {
  std::string label;
  DependenceModel model;
};

/// K in {1,2,4,7} x rho in {.25,.5,.75} x three scenarios (lambda = 1, mu = 1/rho),
/// Kibble-Moran m in {1,2} and one Cheriyan-Ramabhadran model.
std::vector<SweepEntry> verify_sweep();

}  // namespace depq
