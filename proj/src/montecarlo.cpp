#include "depq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "depq/errors.hpp"
#include "depq/inversion.hpp"

namespace depq {

namespace {

SimEstimate from_batches(const std::vector<double>& means) {
  SimEstimate e;
  const double n = static_cast<double>(means.size());
  e.n = static_cast<long>(means.size());
  if (means.empty()) return e;
  double s = 0.0;
  for (double x : means) s += x;
  e.point = s / n;
  if (means.size() < 2) return e;
  double ss = 0.0;
  for (double x : means) ss += (x - e.point) * (x - e.point);
  e.std_error = std::sqrt(ss / (n - 1.0) / n);
  return e;
}

SimEstimate from_moments(double sum, double sum2, long n) {
  SimEstimate e;
  e.n = n;
  if (n == 0) return e;
  e.point = sum / n;
  if (n > 1) e.std_error = std::sqrt(std::max(0.0, sum2 / n - e.point * e.point) / (n - 1.0));
  return e;
}

void check_config(const DependenceModel& m, const SimConfig& cfg) {
  if (cfg.n_customers < 1 || cfg.warmup < 0 || cfg.batches < 2 || cfg.replications < 1 ||
      cfg.n_customers < cfg.batches)
    throw Error(ErrorCode::InvalidArgument, "invalid simulation config");
  if (!is_stable(m)) throw Error(ErrorCode::StabilityViolation, "stability violated: rho >= 1");
}

/// Runs `body(r)` for each replication index, concurrently when there is more than one.
template <typename F>
void for_replications(int replications, F body) {
  if (replications == 1) {
    body(0);
    return;
  }
  std::vector<std::thread> pool;
  for (int r = 0; r < replications; ++r) pool.emplace_back([&, r] { body(r); });
  for (auto& t : pool) t.join();
}

struct WaitingBatches {
  std::vector<double> mean, zero;
  std::vector<std::vector<double>> tail, lst;
  double cyc_sum = 0, cyc_sum2 = 0;
  long cycles = 0;
};

WaitingBatches run_waiting(const DependenceModel& m, const SimConfig& cfg, int rep, const std::vector<double>& tg,
                           const std::vector<double>& lg) {
  PairSampler sampler(m);
  Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(rep));
  const double c = m.c;
  double w = 0.0;
  for (long i = 0; i < cfg.warmup; ++i) {
    const auto p = sampler(rng);
    w = std::max(w + p.b / c - p.a, 0.0);
  }
  WaitingBatches out;
  out.tail.assign(tg.size(), {});
  out.lst.assign(lg.size(), {});
  const long size = cfg.n_customers / cfg.batches;
  long cycle_len = -1;  // -1 until the first customer finding the system empty
  std::vector<double> tail_acc(tg.size()), lst_acc(lg.size());
  for (int b = 0; b < cfg.batches; ++b) {
    double sum = 0.0;
    long zeros = 0;
    std::fill(tail_acc.begin(), tail_acc.end(), 0.0);
    std::fill(lst_acc.begin(), lst_acc.end(), 0.0);
    for (long i = 0; i < size; ++i) {
      sum += w;
      if (w == 0.0) {
        ++zeros;
        if (cycle_len > 0) {
          out.cyc_sum += cycle_len;
          out.cyc_sum2 += double(cycle_len) * cycle_len;
          ++out.cycles;
        }
        cycle_len = 0;
      }
      if (cycle_len >= 0) ++cycle_len;
      for (std::size_t k = 0; k < tg.size(); ++k) tail_acc[k] += w > tg[k] ? 1.0 : 0.0;
      for (std::size_t k = 0; k < lg.size(); ++k) lst_acc[k] += std::exp(-lg[k] * w);
      const auto p = sampler(rng);
      w = std::max(w + p.b / c - p.a, 0.0);
    }
    out.mean.push_back(sum / size);
    out.zero.push_back(double(zeros) / size);
    for (std::size_t k = 0; k < tg.size(); ++k) out.tail[k].push_back(tail_acc[k] / size);
    for (std::size_t k = 0; k < lg.size(); ++k) out.lst[k].push_back(lst_acc[k] / size);
  }
  return out;
}

struct WorkloadBatches {
  std::vector<double> empty;
  std::vector<std::vector<double>> tail;
};

WorkloadBatches run_workload(const DependenceModel& m, const SimConfig& cfg, int rep, const std::vector<double>& grid) {
  PairSampler sampler(m);
  Rng rng = make_stream(cfg.seed, 1000 + static_cast<std::uint64_t>(rep));
  const double c = m.c;
  double w = 0.0;
  for (long i = 0; i < cfg.warmup; ++i) {
    const auto p = sampler(rng);
    w = std::max(w + p.b / c - p.a, 0.0);
  }
  WorkloadBatches out;
  out.tail.assign(grid.size(), {});
  const long size = cfg.n_customers / cfg.batches;
  std::vector<double> above(grid.size());
  for (int b = 0; b < cfg.batches; ++b) {
    double total = 0.0, idle = 0.0;
    std::fill(above.begin(), above.end(), 0.0);
    for (long i = 0; i < size; ++i) {
      const auto p = sampler(rng);
      // work just after the arrival, drained at speed c until the next arrival
      const double x0 = c * w + p.b;
      total += p.a;
      idle += std::max(0.0, p.a - x0 / c);
      for (std::size_t k = 0; k < grid.size(); ++k) above[k] += std::clamp((x0 - grid[k]) / c, 0.0, p.a);
      w = std::max(w + p.b / c - p.a, 0.0);
    }
    out.empty.push_back(idle / total);
    for (std::size_t k = 0; k < grid.size(); ++k) out.tail[k].push_back(above[k] / total);
  }
  return out;
}

RuinSim run_ruin(const DependenceModel& m, const SimConfig& cfg, double u, double horizon, bool delayed) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "ruin horizon must be > 0");
  if (cfg.n_paths < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 ruin paths");
  if (!is_stable(m)) throw Error(ErrorCode::StabilityViolation, "stability violated: rho >= 1");
  PairSampler sampler(m);
  Rng rng = make_stream(cfg.seed, delayed ? 2000 : 3000);
  long ruined = 0;
  for (long path = 0; path < cfg.n_paths; ++path) {
    double capital = u, t = 0.0;
    PairSample p = delayed ? sampler.residual(rng) : sampler(rng);
    for (;;) {
      t += p.a;
      if (t > horizon) break;
      capital += m.c * p.a - p.b;
      if (capital < 0.0) {
        ++ruined;
        break;
      }
      p = sampler(rng);
    }
  }
  RuinSim r;
  r.horizon = horizon;
  r.psi = from_moments(double(ruined), double(ruined), cfg.n_paths);
  return r;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(std::max(n, 0));
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

WaitingSim simulate_waiting(const DependenceModel& m, const SimConfig& cfg, const std::vector<double>& tail_grid,
                            const std::vector<double>& lst_grid) {
  check_config(m, cfg);
  std::vector<WaitingBatches> reps(cfg.replications);
  for_replications(cfg.replications, [&](int r) { reps[r] = run_waiting(m, cfg, r, tail_grid, lst_grid); });

  WaitingSim out;
  out.tail_grid = tail_grid;
  out.lst_grid = lst_grid;
  std::vector<double> mean, zero;
  std::vector<std::vector<double>> tail(tail_grid.size()), lst(lst_grid.size());
  double cs = 0, cs2 = 0;
  long cn = 0;
  for (const auto& r : reps) {
    mean.insert(mean.end(), r.mean.begin(), r.mean.end());
    zero.insert(zero.end(), r.zero.begin(), r.zero.end());
    for (std::size_t k = 0; k < tail.size(); ++k) tail[k].insert(tail[k].end(), r.tail[k].begin(), r.tail[k].end());
    for (std::size_t k = 0; k < lst.size(); ++k) lst[k].insert(lst[k].end(), r.lst[k].begin(), r.lst[k].end());
    cs += r.cyc_sum, cs2 += r.cyc_sum2, cn += r.cycles;
  }
  const long per_batch = cfg.n_customers / cfg.batches;
  out.meanW = from_batches(mean);
  out.atomW = from_batches(zero);
  out.meanW.n = out.atomW.n = per_batch * static_cast<long>(mean.size());
  for (auto& t : tail) out.tail.push_back(from_batches(t));
  for (auto& t : lst) out.lst.push_back(from_batches(t));
  out.busy_cycle_customers = from_moments(cs, cs2, cn);
  return out;
}

WorkloadSim simulate_workload(const DependenceModel& m, const SimConfig& cfg, const std::vector<double>& grid) {
  check_config(m, cfg);
  std::vector<WorkloadBatches> reps(cfg.replications);
  for_replications(cfg.replications, [&](int r) { reps[r] = run_workload(m, cfg, r, grid); });
  std::vector<double> empty;
  std::vector<std::vector<double>> tail(grid.size());
  for (const auto& r : reps) {
    empty.insert(empty.end(), r.empty.begin(), r.empty.end());
    for (std::size_t k = 0; k < grid.size(); ++k) tail[k].insert(tail[k].end(), r.tail[k].begin(), r.tail[k].end());
  }
  WorkloadSim out;
  out.grid = grid;
  out.empty = from_batches(empty);
  for (auto& t : tail) out.tail.push_back(from_batches(t));
  return out;
}

RuinSim simulate_delayed_ruin(const DependenceModel& m, const SimConfig& cfg, double u, double horizon) {
  return run_ruin(m, cfg, u, horizon, true);
}

RuinSim simulate_ordinary_ruin(const DependenceModel& m, const SimConfig& cfg, double u, double horizon) {
  return run_ruin(m, cfg, u, horizon, false);
}

double default_ruin_horizon(const DependenceModel& m) {
  int K = 1;
  for (const auto& p : erlang_pairs(m)) K = std::max(K, p.a_order);
  if (m.family == Family::KibbleMoran) K = std::max(K, m.km_order);
  return 50.0 * moments(m).EA * K;
}

OrderingReport ordering_check(const std::vector<double>& weights, double lambda, double mu, const SimConfig& cfg,
                              const std::vector<double>& t_grid, bool strict) {
  const auto pos = build_scenario(ScenarioKind::Positive, weights, lambda, mu);
  const auto ind = build_scenario(ScenarioKind::Independent, weights, lambda, mu);
  const auto neg = build_scenario(ScenarioKind::Negative, weights, lambda, mu);
  const int K = static_cast<int>(weights.size());

  OrderingReport rep;
  rep.t_grid = t_grid;
  rep.symmetric = true;
  for (int i = 0; i < K; ++i) rep.symmetric = rep.symmetric && std::abs(weights[i] - weights[K - 1 - i]) <= 1e-12;
  rep.mean_d = {difference_mean(pos), difference_mean(ind), difference_mean(neg)};
  const double scale = 1.0 / lambda + 1.0 / mu;
  rep.means_equal = std::abs(rep.mean_d[0] - rep.mean_d[1]) <= 1e-12 * K * scale &&
                    std::abs(rep.mean_d[1] - rep.mean_d[2]) <= 1e-12 * K * scale;

  for (double t : t_grid) {
    rep.exact_pos.push_back(difference_stop_loss(pos, t));
    rep.exact_ind.push_back(difference_stop_loss(ind, t));
    rep.exact_neg.push_back(difference_stop_loss(neg, t));
    if (rep.exact_pos.back() > rep.exact_ind.back() + 1e-9) rep.first_violations.push_back(t);
    if (rep.exact_ind.back() > rep.exact_neg.back() + 1e-9) rep.second_violations.push_back(t);
  }
  rep.first_holds = rep.first_violations.empty();
  rep.second_holds = rep.second_violations.empty();
  if (strict && !rep.first_holds)
    throw Error(ErrorCode::OrderingViolation,
                "E(D+ - t)_+ > E(D0 - t)_+ at t = " + std::to_string(rep.first_violations.front()));
  if (strict && rep.symmetric && !rep.second_holds)
    throw Error(ErrorCode::OrderingViolation,
                "E(D0 - t)_+ > E(D- - t)_+ at t = " + std::to_string(rep.second_violations.front()));

  if (cfg.n_customers > 1) {
    // common random numbers: one set of unit exponentials shared by the three scenarios
    Rng rng = make_stream(cfg.seed, 4000);
    std::vector<double> cum(K);
    std::partial_sum(weights.begin(), weights.end(), cum.begin());
    auto draw_m = [&] {
      const double u = std::uniform_real_distribution<double>(0.0, cum.back())(rng);
      return std::min(static_cast<int>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin()), K - 1) + 1;
    };
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> ea(K + 1), eb(K + 1);
    const std::size_t nt = t_grid.size();
    std::vector<double> s(3 * nt), s2(3 * nt), d1(nt), d1s(nt), d2(nt), d2s(nt);
    const long n = cfg.n_customers;
    for (long i = 0; i < n; ++i) {
      const int m1 = draw_m(), m2 = draw_m();
      ea[0] = eb[0] = 0.0;
      for (int k = 1; k <= K; ++k) {
        ea[k] = ea[k - 1] + expo(rng);
        eb[k] = eb[k - 1] + expo(rng);
      }
      const double a = ea[m1] / lambda;
      const double dp = a - eb[m1] / mu, d0 = a - eb[m2] / mu, dm = a - eb[K + 1 - m1] / mu;
      for (std::size_t k = 0; k < nt; ++k) {
        const double t = t_grid[k];
        const double vp = std::max(dp - t, 0.0), v0 = std::max(d0 - t, 0.0), vm = std::max(dm - t, 0.0);
        s[k] += vp, s2[k] += vp * vp;
        s[nt + k] += v0, s2[nt + k] += v0 * v0;
        s[2 * nt + k] += vm, s2[2 * nt + k] += vm * vm;
        d1[k] += vp - v0, d1s[k] += (vp - v0) * (vp - v0);
        d2[k] += v0 - vm, d2s[k] += (v0 - vm) * (v0 - vm);
      }
    }
    for (std::size_t k = 0; k < nt; ++k) {
      rep.mc_pos.push_back(from_moments(s[k], s2[k], n));
      rep.mc_ind.push_back(from_moments(s[nt + k], s2[nt + k], n));
      rep.mc_neg.push_back(from_moments(s[2 * nt + k], s2[2 * nt + k], n));
      const SimEstimate e1 = from_moments(d1[k], d1s[k], n), e2 = from_moments(d2[k], d2s[k], n);
      if (e1.point > 3.0 * e1.std_error + 1e-12) rep.mc_first_flag = true;
      if (e2.point > 3.0 * e2.std_error + 1e-12) rep.mc_second_flag = true;
    }
  }
  return rep;
}

}  // namespace depq
