#include "depq/queuerisk.hpp"

#include <cmath>
#include <sstream>

#include "depq/errors.hpp"
#include "depq/inversion.hpp"

namespace depq {

namespace {

/// Law of cX from the law of X (atom + density).
ExpPolyMix scale_law(const ExpPolyMix& law, double c) {
  ExpPolyMix out = dilate(law, c);
  for (auto& t : out.terms) t.coef /= c;
  return out;
}

ExpPolyMix function_part(ExpPolyMix f) {
  f.atom0 = 0.0;
  return f;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

ExpPolyMix workload_tail(const ExpPolyMix& cw_law, const ExpPolyMix& bres_density, double rho) {
  ExpPolyMix tail = rho * integrate_tail(convolve(cw_law, function_part(bres_density)));
  tail.atom0 = 1.0 - rho;
  return tail;
}

ExpPolyMix takacs_delayed_ruin(const ExpPolyMix& ordinary_ruin, const ExpPolyMix& bres_density, double rho) {
  const ExpPolyMix b = function_part(bres_density);
  ExpPolyMix psi = rho * (function_part(integrate_tail(b)) + convolve(function_part(ordinary_ruin), b));
  psi.atom0 = 1.0 - rho;
  return psi;
}

std::vector<double> duality_grid(const ScenarioReport& r, int points) {
  const double top = 10.0 * std::max(r.model.c * r.meanW, r.moments.EB);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = points == 1 ? 0.0 : top * i / (points - 1);
  return grid;
}

ScenarioReport analyze(const DependenceModel& m, const AnalyzeOptions& options) {
  ScenarioReport r;
  r.model = m;
  r.moments = moments(m);
  r.level = options.level;
  if (!(r.moments.EY < 0.0))
    throw Error(ErrorCode::StabilityViolation, "stability violated: rho = " + fmt(r.moments.rho) + " >= 1");
  r.factorization = factorize(y_transform(m), options.factorize);

  const ExpPolyMix w_law = invert_density(waiting_factored(r.factorization));
  r.atomW = r.factorization.atom;
  r.waiting_tail = integrate_tail(w_law);
  r.waiting_tail.atom0 = r.atomW;
  r.meanW = mean(r.waiting_tail);
  r.q = quantile(r.waiting_tail, options.level);
  r.mean_idle = idle_lst(r.factorization).mean_idle;

  const double c = m.c;
  const double rho = r.moments.rho;
  r.cw_density = scale_law(w_law, c);
  r.cw_density.atom0 = r.atomW;
  r.ordinary_ruin_tail = dilate(r.waiting_tail, c);

  ExpPolyMix btail = marginal_b_tail(m);
  r.bres_density = (1.0 / r.moments.EB) * function_part(btail);

  r.workload_tail = workload_tail(r.cw_density, r.bres_density, rho);
  r.delayed_ruin_tail = takacs_delayed_ruin(r.ordinary_ruin_tail, r.bres_density, rho);

  const double v0 = r.workload_tail(0.0);
  if (std::abs(v0 - rho) > options.workload_atom_tolerance)
    throw Error(ErrorCode::DualityViolation,
                "workload atom: P(V > 0) = " + fmt(v0) + " but rho = " + fmt(rho));

  for (double u : duality_grid(r, options.duality_points)) {
    const double gap = std::abs(r.delayed_ruin_tail(u) - r.workload_tail(u));
    r.max_duality_gap = std::max(r.max_duality_gap, gap);
    if (!(gap <= options.duality_tolerance))
      throw Error(ErrorCode::DualityViolation,
                  "duality violated at u = " + fmt(u) + ": |Psi(u) - P(V > u)| = " + fmt(gap));
  }
  return r;
}

double ordinary_ruin(const ScenarioReport& r, double u) {
  if (u < 0.0) return 1.0;
  return r.ordinary_ruin_tail(u);
}

double delayed_ruin(const ScenarioReport& r, double u) {
  if (u < 0.0) return 1.0;
  return r.delayed_ruin_tail(u);
}

CRational ruin_lst(const FactorizationResult& fr, double c) {
  const CRational w = waiting_lst(fr);
  const CPoly cs{0.0, c};
  const CPoly n = compose(w.num(), cs), d = compose(w.den(), cs);
  return CRational((d - n).drop_constant(), d);
}

double var_quantile(const ScenarioReport& r, double level, RuinKind kind) {
  return quantile(kind == RuinKind::Ordinary ? r.ordinary_ruin_tail : r.delayed_ruin_tail, level);
}

std::vector<SweepEntry> verify_sweep() {
  std::vector<SweepEntry> out;
  const std::pair<ScenarioKind, const char*> kinds[] = {
      {ScenarioKind::Positive, "positive"}, {ScenarioKind::Independent, "independent"},
      {ScenarioKind::Negative, "negative"}};
  for (int K : {1, 2, 4, 7})
    for (double rho : {0.25, 0.5, 0.75})
      for (const auto& [kind, name] : kinds)
        out.push_back({std::string(name) + " K=" + std::to_string(K) + " rho=" + fmt(rho),
                       build_scenario(kind, uniform_weights(K), 1.0, 1.0 / rho)});
  for (int order : {1, 2})
    out.push_back({"kibble_moran m=" + std::to_string(order) + " p=0.5",
                   DependenceModel::kibble_moran(order, 0.5, 1.0, 2.0)});
  out.push_back({"cheriyan_ramabhadran orders=1,2,1 rates=1.5,2,4",
                 DependenceModel::cheriyan_ramabhadran({1, 2, 1}, {1.5, 2.0, 4.0})});
  return out;
}

}  // namespace depq
