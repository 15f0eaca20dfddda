// One PASS/FAIL line per acceptance criterion. Tolerances and runtime limits are fixed here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "depq/errors.hpp"
#include "depq/montecarlo.hpp"
#include "depq/queuerisk.hpp"
#include "depq/tables.hpp"

using namespace depq;
using cd = std::complex<double>;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr long kCustomers = 1000000;
constexpr double kZ = 3.0;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

std::string fmt(double x, const char* f = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int id, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double el = seconds_since(t0);
  if (el > limit_s) {
    o.pass = false;
    o.notes.push_back("runtime " + fmt(el) + " s over the " + fmt(limit_s) + " s limit");
  }
  std::printf("CRITERION %d %s  %s  [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), el);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
  return o.pass;
}

SimConfig sim_config() {
  SimConfig cfg;
  cfg.seed = kSeed;
  cfg.n_customers = kCustomers;
  return cfg;
}

/// Five thresholds spread over the continuous part of W.
std::vector<double> tail_points(const ScenarioReport& r) {
  std::vector<double> out;
  for (double f : {0.2, 0.4, 0.6, 0.8, 0.95}) out.push_back(quantile(r.waiting_tail, r.atomW + (1.0 - r.atomW) * f));
  return out;
}

/// Largest |z| of meanW, atomW and the tail at five points.
double simulation_max_z(const DependenceModel& m, const ScenarioReport& r, std::uint64_t seed_offset) {
  SimConfig cfg = sim_config();
  cfg.seed += seed_offset;
  const auto grid = tail_points(r);
  const auto sim = simulate_waiting(m, cfg, grid);
  auto z = [](const SimEstimate& e, double v) { return std::abs(e.point - v) / e.std_error; };
  double worst = std::max(z(sim.meanW, r.meanW), z(sim.atomW, r.atomW));
  for (std::size_t k = 0; k < grid.size(); ++k) worst = std::max(worst, z(sim.tail[k], r.waiting_tail(grid[k])));
  return worst;
}

struct Sim4 {
  bool pass = false;
  double worst_z = 0.0;
};
Sim4 criterion4_result;

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = build_scenario(ScenarioKind::Independent, {1.0}, 1.0, 2.0);
  const auto r = analyze(m);
  const auto idle = idle_lst(r.factorization);
  const double el = seconds_since(t0);
  double err = 0.0;
  err = std::max(err, std::abs(r.atomW - 0.5));
  err = std::max(err, std::abs(r.meanW - 0.5));
  err = std::max(err, std::abs(r.q - std::log(10.0)));
  for (double u : linspace(0.0, 10.0, 41)) err = std::max(err, std::abs(r.waiting_tail(u) - 0.5 * std::exp(-u)));
  err = std::max(err, std::abs(idle.mean_idle - 1.0));
  for (double s : {-0.1, -0.5, -1.0, -3.0, -10.0}) err = std::max(err, std::abs(idle.lst(cd(s)) - 1.0 / (1.0 - s)));
  o.require(err <= 1e-10, "max error " + fmt(err));
  o.require(el < 1.0, "pipeline runtime");
  o.detail = "M/M/1 (lambda=1, mu=2): atom, mean, tail on 41 points, idle ~ exp(1), q95 = ln 10; max error " +
             fmt(err) + " (tol 1e-10), pipeline " + fmt(el * 1e3) + " ms";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto sweep = verify_sweep();
  int checked = 0;
  for (const auto& e : sweep) {
    const CRational y = y_transform(e.model);
    // raw counts straight from the polynomials, before any cancellation
    const auto hs = classify_halfplane(find_roots(y.den() - y.num()));
    const auto gs = classify_halfplane(find_roots(y.den()));
    const int nh = hs.plus.total_multiplicity() + hs.axis.total_multiplicity();
    const int ng = gs.plus.total_multiplicity() + gs.axis.total_multiplicity();
    o.require(nh == ng, e.label + ": " + std::to_string(nh) + " zeros of g - f vs " + std::to_string(ng) + " of g");
    const auto fr = factorize(y);
    o.require(fr.s_plus.total_multiplicity() == fr.stilde_plus.total_multiplicity(), e.label + ": factorized counts");
    ++checked;
  }
  o.require(checked >= 30, "sweep has fewer than 30 models");
  o.detail = std::to_string(checked) + " models, zero-count equality in Re s >= 0 (raw and after factorization)";
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0.0;
  int n = 0;
  for (const auto& e : verify_sweep()) {
    AnalyzeOptions opt;
    opt.duality_tolerance = 1.0;  // measured here, not inside analyze
    const auto r = analyze(e.model, opt);
    double gap = 0.0;
    const auto grid = duality_grid(r, 100);
    for (double u : grid) gap = std::max(gap, std::abs(delayed_ruin(r, u) - r.workload_tail(u)));
    o.require(gap <= 1e-8 && grid.size() >= 100, e.label + ": gap " + fmt(gap));
    worst = std::max(worst, gap);
    ++n;
  }
  o.detail = std::to_string(n) + " models x 100 points, max |Psi(u) - P(V>u)| = " + fmt(worst) + " (tol 1e-8)";
  return o;
}

Outcome criterion4() {
  Outcome o;
  double worst = 0.0;
  std::uint64_t offset = 0;
  for (double rho : {0.25, 0.5, 0.75})
    for (int s = 0; s < 3; ++s) {
      const auto m = table_model(s, 5, 1.0, 1.0 / rho);
      const auto r = analyze(m);
      const double z = simulation_max_z(m, r, offset++);
      o.require(z <= kZ, "scenario " + std::to_string(s) + " rho=" + fmt(rho) + ": |z| = " + fmt(z));
      worst = std::max(worst, z);
    }
  criterion4_result = {o.pass, worst};
  o.detail = "9 models (K=5), 1e6 customers each, meanW + atomW + tail at 5 points: max |z| = " + fmt(worst) +
             " (tol 3 batch-means std errors)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  SimConfig no_sim;
  no_sim.n_customers = 0;
  for (int K : {2, 5, 14}) {
    const double lambda = 1.0, mu = 2.0;
    const double ea = (K + 1) / 2.0 / lambda, eb = (K + 1) / 2.0 / mu;
    const auto t = linspace(-3.0 * eb, 3.0 * ea, 25);
    const auto rep = ordering_check(uniform_weights(K), lambda, mu, no_sim, t);
    o.require(rep.first_holds, "K=" + std::to_string(K) + " D+ <= D0");
    o.require(rep.second_holds, "K=" + std::to_string(K) + " D0 <= D-");
    o.require(rep.means_equal, "K=" + std::to_string(K) + " equal means of D");
    // waiting times
    const auto w = uniform_weights(K);
    const auto pos = analyze(build_scenario(ScenarioKind::Positive, w, lambda, mu));
    const auto ind = analyze(build_scenario(ScenarioKind::Independent, w, lambda, mu));
    const auto neg = analyze(build_scenario(ScenarioKind::Negative, w, lambda, mu));
    for (double u : linspace(0.0, 5.0 * neg.meanW, 25)) {
      o.require(stop_loss(pos.waiting_tail, u) <= stop_loss(ind.waiting_tail, u) + 1e-9, "W+ <= W0 at " + fmt(u));
      o.require(stop_loss(ind.waiting_tail, u) <= stop_loss(neg.waiting_tail, u) + 1e-9, "W0 <= W- at " + fmt(u));
    }
  }
  const auto cx = ordering_check({1.0, 0.0}, 1.0, 2.0, no_sim, linspace(-3.0, 3.0, 25));
  o.require(!cx.second_holds, "point mass counterexample not detected");
  o.detail = "K in {2,5,14}: both orderings of A - B/c and of W on 25 thresholds (tol 1e-9); point mass M=1 violates "
             "D0 <= D- at " + std::to_string(cx.second_violations.size()) + "/25 thresholds as expected";
  return o;
}

int sign(double x, double tol) { return x > tol ? 1 : x < -tol ? -1 : 0; }

Outcome criterion6() {
  Outcome o;
  const auto k_lit = reproduce_table(TableKind::VaryK, Normalization::UnitArrival);
  const auto r_lit = reproduce_table(TableKind::VaryRho, Normalization::UnitArrival);
  const auto k_unit = reproduce_table(TableKind::VaryK, Normalization::UnitService);
  const auto r_unit = reproduce_table(TableKind::VaryRho, Normalization::UnitService);

  const TableRow& a = k_lit[0];  // K=2, rho=.5
  const TableRow& b = r_lit[2];  // K=5, rho=.5
  const double literal = std::max(a.max_abs_diff, b.max_abs_diff);
  const bool literal_ok = literal <= 0.02;
  o.notes.push_back("literal check, lambda=1 mu=1/rho, rows (K=2,rho=.5) and (K=5,rho=.5): max abs diff " +
                    fmt(literal) + (literal_ok ? " <= 0.02" : " > 0.02, literal match fails"));
  if (literal_ok) {
    o.detail = "literal match within 0.02";
    return o;
  }

  // Is the miss a scale factor? Atoms are scale-free; means and quantiles should be off by a common factor.
  double atom_diff = 0.0;
  std::vector<double> ratios;
  for (const auto* rows : {&k_lit, &r_lit})
    for (const auto& row : *rows) {
      for (int k = 3; k < 6; ++k) atom_diff = std::max(atom_diff, std::abs(row.computed[k] - row.reference[k]));
      for (int k : {0, 1, 2, 6, 7, 8})
        if (row.reference[k] >= 0.3) ratios.push_back(row.computed[k] / row.reference[k] / row.rho);
    }
  double rmin = 1e300, rmax = 0.0;
  for (double x : ratios) rmin = std::min(rmin, x), rmax = std::max(rmax, x);
  o.notes.push_back("atoms agree to " + fmt(atom_diff) + "; computed/reference/rho for means and quantiles spans [" +
                    fmt(rmin, "%.3f") + ", " + fmt(rmax, "%.3f") + "]: a systematic scale factor rho, so the fallback applies");
  const bool scale_miss = atom_diff <= 0.02 && rmin > 0.9 && rmax < 1.1;
  o.require(scale_miss, "miss is not a systematic scale factor");

  // fallback: criterion 4 plus qualitative reproduction on every row, in the literal normalization
  o.require(criterion4_result.pass, "criterion 4 agreement");
  int rows_checked = 0;
  for (const auto* rows : {&k_lit, &r_lit}) {
    for (const auto& row : *rows) {
      const auto& c = row.computed;
      const std::string tag = "K=" + std::to_string(row.K) + " rho=" + fmt(row.rho);
      o.require(c[0] < c[1] && c[1] < c[2], tag + ": EW+ < EW0 < EW-");
      o.require(c[3] > c[4] && c[4] > c[5], tag + ": atom+ > atom0 > atom-");
      // all three quantiles are 0 when every atom exceeds the level; that row ties in the reference too
      const bool all_zero = c[6] == 0.0 && c[7] == 0.0 && c[8] == 0.0 && row.reference[6] == 0.0;
      o.require(all_zero || (c[6] < c[7] && c[7] < c[8]), tag + ": q+ < q0 < q-");
      ++rows_checked;
    }
    // monotone along the table, in the direction the reference columns move
    for (std::size_t i = 1; i < rows->size(); ++i)
      for (int k = 0; k < 9; ++k) {
        const int ref = sign((*rows)[i].reference[k] - (*rows)[i - 1].reference[k], 0.0);
        const int got = sign((*rows)[i].computed[k] - (*rows)[i - 1].computed[k], 1e-12);
        o.require(ref == got, std::string(kTableColumnNames[k]) + " direction between rows " + std::to_string(i - 1) +
                                  " and " + std::to_string(i));
      }
  }
  double unit = 0.0;
  int cells = 0, close = 0;
  for (const auto* rows : {&k_unit, &r_unit})
    for (const auto& row : *rows) {
      unit = std::max(unit, row.max_abs_diff);
      for (int k = 0; k < 9; ++k, ++cells) close += std::abs(row.computed[k] - row.reference[k]) <= 0.02;
    }
  o.notes.push_back("with mu=1, lambda=rho instead: " + std::to_string(close) + "/" + std::to_string(cells) +
                    " cells within 0.02 of the reference, largest difference " + fmt(unit));
  o.detail = "fallback: criterion 4 holds, orderings on all " + std::to_string(rows_checked) +
             " rows, column monotonicity in K and rho matches the reference";
  return o;
}

Outcome criterion7() {
  Outcome o;
  double atom_v = 0.0, atom_w = 0.0, worst_z = 0.0;
  int n = 0;
  std::uint64_t offset = 100;
  for (const auto& e : verify_sweep()) {
    const auto r = analyze(e.model);
    const double ev = std::max(std::abs(r.workload_tail.atom0 - (1.0 - r.moments.rho)),
                               std::abs(1.0 - r.workload_tail(0.0) - (1.0 - r.moments.rho)));
    const cd prod = r.factorization.s_minus.product() / r.factorization.stilde_minus.product();
    const double ew = std::abs(cd(r.atomW) - prod);
    o.require(ev <= 1e-9, e.label + ": P(V=0) error " + fmt(ev));
    o.require(ew <= 1e-12 * std::max(1.0, std::abs(prod)), e.label + ": root product error " + fmt(ew));
    SimConfig cfg = sim_config();
    cfg.seed += offset++;
    const auto sim = simulate_waiting(e.model, cfg);
    const double z = std::abs(sim.atomW.point - r.atomW) / sim.atomW.std_error;
    o.require(z <= kZ, e.label + ": simulated atom |z| = " + fmt(z));
    atom_v = std::max(atom_v, ev);
    atom_w = std::max(atom_w, ew);
    worst_z = std::max(worst_z, z);
    ++n;
  }
  o.detail = std::to_string(n) + " models: max |P(V=0) - (1-rho)| = " + fmt(atom_v) + " (tol 1e-9), max |atomW - root product| = " +
             fmt(atom_w) + ", simulated atom max |z| = " + fmt(worst_z) + " (1e6 customers, tol 3)";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto m = DependenceModel::kibble_moran(2, 0.5, 1.0, 2.0);
  const auto r = analyze(m);
  int max_mult = 0;
  for (const auto& p : r.factorization.s_minus.roots) max_mult = std::max(max_mult, p.multiplicity);
  for (const auto& p : r.factorization.stilde_minus.roots) max_mult = std::max(max_mult, p.multiplicity);
  o.require(max_mult >= 2, "no double root in the factorization");
  const CRational w = waiting_lst(r.factorization);
  double rt = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const cd s(0.3 * k, k % 2 ? 0.5 * k : 0.0);
    rt = std::max(rt, std::abs(lst_from_tail(r.waiting_tail, s) - w(s)));
  }
  o.require(rt <= 1e-8, "round trip error " + fmt(rt));
  const double z = simulation_max_z(m, r, 200);
  o.require(z <= kZ, "simulation |z| = " + fmt(z));
  o.detail = "Kibble-Moran m=2 (p=.5, lambda=1, mu=2): root multiplicity " + std::to_string(max_mult) +
             ", transform round trip at 10 points " + fmt(rt) + " (tol 1e-8), simulation max |z| = " + fmt(z) +
             " (tol 3)";
  return o;
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, 1.0, criterion1);
  all &= report(2, 10.0, criterion2);
  all &= report(3, 30.0, criterion3);
  all &= report(4, 120.0, criterion4);
  all &= report(5, 30.0, criterion5);
  all &= report(6, 60.0, criterion6);
  all &= report(7, 120.0, criterion7);
  all &= report(8, 60.0, criterion8);
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
