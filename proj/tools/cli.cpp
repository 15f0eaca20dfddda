#include "depq/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "depq/errors.hpp"
#include "depq/model_json.hpp"
#include "depq/montecarlo.hpp"
#include "depq/queuerisk.hpp"
#include "depq/tables.hpp"

namespace depq::cli {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const char* first = s.data();
  if (first != end && *first == '+') ++first;
  const auto res = std::from_chars(first, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "grid range must be lo:hi:n");
    const double n = parse_number(parts[2]);
    if (n < 1 || n != std::floor(n)) throw Error(ErrorCode::InvalidArgument, "grid count must be a positive integer");
    const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
    if (n == 1) return {lo};
    return linspace(lo, hi, static_cast<int>(n));
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p));
  return out;
}

namespace {

/// CSV with a header row; numbers through format_number.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { line(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width");
    line(cells);
  }
  std::string str() const { return text_.str(); }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) text_ << (k ? "," : "") << cells[k];
    text_ << '\n';
  }
  std::size_t width_;
  std::ostringstream text_;
};

std::string num(double x) { return format_number(x); }

std::string level_key(double level) { return "q" + format_number(std::round(level * 1e8) / 1e6); }

json roots_json(const RootSet& rs) {
  json a = json::array();
  for (const auto& r : rs.roots) a.push_back({{"re", r.location.real()}, {"im", r.location.imag()}, {"mult", r.multiplicity}});
  return a;
}

json moments_json(const MomentReport& mo) {
  return {{"EA", mo.EA}, {"EB", mo.EB}, {"VarA", mo.VarA}, {"VarB", mo.VarB},
          {"Cov", mo.Cov}, {"corr", mo.corr}, {"rho", mo.rho}, {"EY", mo.EY}};
}

json estimate_json(const SimEstimate& e) { return {{"estimate", e.point}, {"std_error", e.std_error}, {"n", e.n}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

DependenceModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

struct Common {
  std::string output;
  std::string format;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + c.output + "'");
  f << text;
}

// ---- analyze

struct AnalyzeArgs {
  Common common;
  std::string model;
  std::string grid;
  double level = 0.95;
};

std::string cmd_analyze(const AnalyzeArgs& a) {
  const DependenceModel m = load_model(a.model);
  AnalyzeOptions opt;
  opt.level = a.level;
  const ScenarioReport r = analyze(m, opt);
  const auto grid = a.grid.empty() ? linspace(0.0, 10.0 * std::max(m.c * r.meanW, r.moments.EB), 51) : parse_grid(a.grid);

  std::vector<double> w, v, p0, p;
  for (double u : grid) {
    w.push_back(r.waiting_tail(u));
    v.push_back(r.workload_tail(u));
    p0.push_back(ordinary_ruin(r, u));
    p.push_back(delayed_ruin(r, u));
  }
  if (a.common.format == "csv") {
    Csv csv({"u", "P_W_gt_u", "P_V_gt_u", "Psi0_u", "Psi_u"});
    for (std::size_t k = 0; k < grid.size(); ++k) csv.row({num(grid[k]), num(w[k]), num(v[k]), num(p0[k]), num(p[k])});
    return csv.str();
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "analyze";
  j["model"] = model_to_json(m);
  j["moments"] = moments_json(r.moments);
  j["meanW"] = r.meanW;
  j["atomW"] = r.atomW;
  j["level"] = r.level;
  j[level_key(r.level)] = r.q;
  j["var_ordinary_ruin"] = var_quantile(r, r.level, RuinKind::Ordinary);
  j["var_delayed_ruin"] = var_quantile(r, r.level, RuinKind::Delayed);
  j["mean_idle"] = r.mean_idle;
  j["workload_atom"] = r.workload_tail.atom0;
  j["max_duality_gap"] = r.max_duality_gap;
  const auto& fr = r.factorization;
  j["roots"] = {{"s_minus", roots_json(fr.s_minus)},
                {"s_plus", roots_json(fr.s_plus)},
                {"stilde_minus", roots_json(fr.stilde_minus)},
                {"stilde_plus", roots_json(fr.stilde_plus)}};
  j["curves"] = {{"u", grid}, {"P_W_gt_u", w}, {"P_V_gt_u", v}, {"Psi0_u", p0}, {"Psi_u", p}};
  return dump(j);
}

// ---- table

struct TableArgs {
  Common common;
  std::string which;
  std::string normalization = "unit-arrival";
  double level = 0.95;
};

std::string cmd_table(const TableArgs& a) {
  const auto norm = normalization_from_name(a.normalization);
  const auto rows = reproduce_table(table_kind_from_name(a.which), norm, a.level);
  if (a.common.format == "csv") {
    std::vector<std::string> header{"K", "rho", "lambda", "mu"};
    for (const char* n : kTableColumnNames) header.push_back(n);
    for (const char* n : kTableColumnNames) header.push_back(std::string("ref_") + n);
    header.push_back("max_abs_diff");
    Csv csv(header);
    for (const auto& row : rows) {
      std::vector<std::string> cells{std::to_string(row.K), num(row.rho), num(row.lambda), num(row.mu)};
      for (double x : row.computed) cells.push_back(num(x));
      for (double x : row.reference) cells.push_back(num(x));
      cells.push_back(num(row.max_abs_diff));
      csv.row(cells);
    }
    return csv.str();
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "table";
  j["table"] = a.which;
  j["normalization"] = normalization_name(norm);
  j["level"] = a.level;
  json arr = json::array();
  for (const auto& row : rows) {
    json jr{{"K", row.K}, {"rho", row.rho}, {"lambda", row.lambda}, {"mu", row.mu}, {"max_abs_diff", row.max_abs_diff}};
    for (int k = 0; k < 9; ++k) {
      jr["computed"][kTableColumnNames[k]] = row.computed[k];
      jr["reference"][kTableColumnNames[k]] = row.reference[k];
    }
    arr.push_back(jr);
  }
  j["rows"] = arr;
  return dump(j);
}

// ---- simulate

struct SimArgs {
  Common common;
  std::string model;
  std::string grid;
  SimConfig cfg;
  bool ruin = false;
  double horizon = 0.0;
};

struct Comparison {
  std::string quantity;
  double u;
  double analytic;
  SimEstimate sim;
};

std::string cmd_simulate(const SimArgs& a) {
  const DependenceModel m = load_model(a.model);
  const ScenarioReport r = analyze(m);
  const auto grid = a.grid.empty() ? linspace(0.0, 4.0 * std::max(m.c * r.meanW, r.moments.EB), 5) : parse_grid(a.grid);
  const auto nan = std::numeric_limits<double>::quiet_NaN();

  std::vector<Comparison> rows;
  const auto ws = simulate_waiting(m, a.cfg, grid);
  rows.push_back({"meanW", nan, r.meanW, ws.meanW});
  rows.push_back({"atomW", nan, r.atomW, ws.atomW});
  rows.push_back({"busy_cycle_customers", nan, 1.0 / r.atomW, ws.busy_cycle_customers});
  for (std::size_t k = 0; k < grid.size(); ++k) rows.push_back({"P_W_gt_u", grid[k], r.waiting_tail(grid[k]), ws.tail[k]});
  const auto vs = simulate_workload(m, a.cfg, grid);
  rows.push_back({"P_V_eq_0", nan, r.workload_tail.atom0, vs.empty});
  for (std::size_t k = 0; k < grid.size(); ++k)
    rows.push_back({"P_V_gt_u", grid[k], r.workload_tail(grid[k]), vs.tail[k]});
  double horizon = 0.0;
  if (a.ruin) {
    horizon = a.horizon > 0.0 ? a.horizon : default_ruin_horizon(m);
    for (double u : grid) rows.push_back({"Psi0_u", u, ordinary_ruin(r, u), simulate_ordinary_ruin(m, a.cfg, u, horizon).psi});
    for (double u : grid) rows.push_back({"Psi_u", u, delayed_ruin(r, u), simulate_delayed_ruin(m, a.cfg, u, horizon).psi});
  }

  if (a.common.format == "csv") {
    Csv csv({"quantity", "u", "analytic", "estimate", "std_error", "within_3se"});
    for (const auto& c : rows)
      csv.row({c.quantity, std::isnan(c.u) ? "" : num(c.u), num(c.analytic), num(c.sim.point), num(c.sim.std_error),
               c.sim.covers(c.analytic) ? "1" : "0"});
    return csv.str();
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "simulate";
  j["model"] = model_to_json(m);
  j["config"] = {{"seed", a.cfg.seed},       {"customers", a.cfg.n_customers}, {"warmup", a.cfg.warmup},
                 {"batches", a.cfg.batches}, {"replications", a.cfg.replications}};
  if (a.ruin) j["config"].update({{"paths", a.cfg.n_paths}, {"horizon", horizon}});
  json arr = json::array();
  for (const auto& c : rows) {
    json e = estimate_json(c.sim);
    e["quantity"] = c.quantity;
    if (!std::isnan(c.u)) e["u"] = c.u;
    e["analytic"] = c.analytic;
    e["within_3se"] = c.sim.covers(c.analytic);
    arr.push_back(e);
  }
  j["comparisons"] = arr;
  return dump(j);
}

// ---- ordering

struct OrderingArgs {
  Common common;
  int K = 5;
  std::string weights;
  double lambda = 1.0;
  double mu = 2.0;
  std::string grid = "-3:3:25";
  SimConfig cfg;
  bool strict = false;
};

std::string cmd_ordering(OrderingArgs a) {
  const std::vector<double> w = a.weights.empty() ? uniform_weights(a.K) : parse_grid(a.weights);
  const auto t = parse_grid(a.grid);
  const auto rep = ordering_check(w, a.lambda, a.mu, a.cfg, t, a.strict);
  const bool mc = !rep.mc_pos.empty();
  if (a.common.format == "csv") {
    std::vector<std::string> header{"t", "exact_pos", "exact_ind", "exact_neg"};
    if (mc) header.insert(header.end(), {"mc_pos", "se_pos", "mc_ind", "se_ind", "mc_neg", "se_neg"});
    Csv csv(header);
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::vector<std::string> cells{num(t[k]), num(rep.exact_pos[k]), num(rep.exact_ind[k]), num(rep.exact_neg[k])};
      if (mc)
        for (const auto* e : {&rep.mc_pos[k], &rep.mc_ind[k], &rep.mc_neg[k]}) {
          cells.push_back(num(e->point));
          cells.push_back(num(e->std_error));
        }
      csv.row(cells);
    }
    return csv.str();
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "ordering";
  j["weights"] = w;
  j["lambda"] = a.lambda;
  j["mu"] = a.mu;
  j["symmetric"] = rep.symmetric;
  j["means_equal"] = rep.means_equal;
  j["mean_d"] = rep.mean_d;
  j["first_holds"] = rep.first_holds;
  j["second_holds"] = rep.second_holds;
  j["first_violations"] = rep.first_violations;
  j["second_violations"] = rep.second_violations;
  j["t"] = t;
  j["exact"] = {{"pos", rep.exact_pos}, {"ind", rep.exact_ind}, {"neg", rep.exact_neg}};
  if (mc) {
    auto series = [](const std::vector<SimEstimate>& v) {
      json s = json::array();
      for (const auto& e : v) s.push_back(estimate_json(e));
      return s;
    };
    j["simulated"] = {{"seed", a.cfg.seed},
                      {"draws", a.cfg.n_customers},
                      {"pos", series(rep.mc_pos)},
                      {"ind", series(rep.mc_ind)},
                      {"neg", series(rep.mc_neg)},
                      {"first_flag", rep.mc_first_flag},
                      {"second_flag", rep.mc_second_flag}};
  }
  return dump(j);
}

// ---- verify

struct VerifyArgs {
  Common common;
  SimConfig cfg;
  bool inject_fault = false;
};

struct Check {
  std::string model;
  std::string check;
  std::string status;  // pass, fail, known_non_ordering
  double value;
  std::string detail;
};

void verify_model(const SweepEntry& e, const SimConfig& cfg, std::vector<Check>& out) {
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  auto rec = [&](const char* name, bool ok, double value, std::string detail = {}) {
    out.push_back({e.label, name, ok ? "pass" : "fail", value, std::move(detail)});
  };
  FactorizationResult fr;
  try {
    fr = factorize(y_transform(e.model));
  } catch (const Error& err) {
    rec("rouche_count", false, nan, std::string(error_code_name(err.code())) + ": " + err.what());
    return;
  }
  rec("rouche_count", fr.s_plus.total_multiplicity() == fr.stilde_plus.total_multiplicity(),
      fr.s_plus.total_multiplicity());
  ScenarioReport r;
  try {
    r = analyze(e.model);
  } catch (const Error& err) {
    rec("duality", false, nan, std::string(error_code_name(err.code())) + ": " + err.what());
    return;
  }
  rec("duality", r.max_duality_gap <= 1e-8, r.max_duality_gap);
  const double atom_err = std::abs(r.workload_tail.atom0 - (1.0 - r.moments.rho));
  rec("workload_atom", atom_err <= 1e-9 && std::abs(r.workload_tail(0.0) - r.moments.rho) <= 1e-9, atom_err);
  const auto prod = fr.s_minus.product() / fr.stilde_minus.product();
  const double prod_err = std::abs(r.atomW - prod.real()) + std::abs(prod.imag());
  rec("waiting_atom_root_product", prod_err <= 1e-12 * std::max(1.0, std::abs(prod)), prod_err);
  const double idle_ref = (1.0 - r.moments.rho) * r.moments.EA / r.atomW;
  rec("mean_idle", r.mean_idle > 0.0 && std::abs(r.mean_idle - idle_ref) <= 1e-8 * idle_ref, r.mean_idle);
  const CRational w = waiting_lst(r.factorization);
  double rt = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const std::complex<double> s(0.25 * k, 0.1 * k);
    rt = std::max(rt, std::abs(lst_from_tail(r.waiting_tail, s) - w(s)));
  }
  rec("transform_round_trip", rt <= 1e-8, rt);
  if (cfg.n_customers > 1) {
    const auto sim = simulate_waiting(e.model, cfg);
    // four standard errors: about 80 simultaneous comparisons over the sweep
    const double zm = std::abs(sim.meanW.point - r.meanW) / sim.meanW.std_error;
    const double za = std::abs(sim.atomW.point - r.atomW) / sim.atomW.std_error;
    rec("simulation_meanW", zm <= 4.0, zm, "z-score");
    rec("simulation_atomW", za <= 4.0, za, "z-score");
  }
}

std::string cmd_verify(const VerifyArgs& a, bool& failed) {
  std::vector<Check> checks;
  const auto sweep = verify_sweep();
  for (const auto& e : sweep) verify_model(e, a.cfg, checks);

  SimConfig ocfg = a.cfg;
  const auto t = linspace(-3.0, 3.0, 25);
  for (int K : {2, 5, 14}) {
    const std::string label = "ordering uniform K=" + std::to_string(K);
    try {
      const auto rep = ordering_check(uniform_weights(K), 1.0, 2.0, ocfg, t, true);
      checks.push_back({label, "difference_ordering", rep.first_holds && rep.second_holds && rep.means_equal ? "pass" : "fail",
                        double(rep.first_violations.size() + rep.second_violations.size()), ""});
      if (!rep.mc_pos.empty())
        checks.push_back({label, "difference_ordering_simulated",
                          rep.mc_first_flag || rep.mc_second_flag ? "fail" : "pass", 0.0, ""});
    } catch (const Error& err) {
      checks.push_back({label, "difference_ordering", "fail", 0.0, err.what()});
    }
  }
  {
    const auto rep = ordering_check({1.0, 0.0}, 1.0, 2.0, ocfg, t, false);
    const bool detected = !rep.second_holds;
    checks.push_back({"point mass M=1 (weights 1,0)", "difference_ordering", detected ? "known_non_ordering" : "fail",
                      double(rep.second_violations.size()),
                      detected ? "second ordering violated at " + std::to_string(rep.second_violations.size()) + " of " +
                                     std::to_string(t.size()) + " thresholds"
                               : "expected violation not detected"});
  }
  if (a.inject_fault) {
    const auto& e = sweep.back();
    auto fr = factorize(y_transform(e.model));
    Root moved = fr.s_minus.roots.front();
    fr.s_minus.roots.erase(fr.s_minus.roots.begin());
    moved.location = -moved.location;
    fr.s_plus.roots.push_back(moved);
    try {
      validate_factorization(fr);
      checks.push_back({e.label + " (injected fault)", "rouche_count", "fail", 0.0, "fault not detected"});
    } catch (const Error& err) {
      checks.push_back({e.label + " (injected fault)", "rouche_count", "fail", 0.0,
                        std::string(error_code_name(err.code())) + ": " + err.what()});
    }
  }

  int passed = 0, known = 0, bad = 0;
  for (const auto& c : checks) (c.status == "pass" ? passed : c.status == "fail" ? bad : known)++;
  failed = bad > 0;
  if (a.common.format == "csv") {
    Csv csv({"model", "check", "status", "value", "detail"});
    for (const auto& c : checks) {
      std::string detail = c.detail;
      for (char& ch : detail)
        if (ch == ',' || ch == '\n') ch = ';';
      csv.row({c.model, c.check, c.status, num(c.value), detail});
    }
    return csv.str();
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "verify";
  j["models"] = sweep.size();
  j["summary"] = {{"pass", passed}, {"fail", bad}, {"known_non_ordering", known}};
  json arr = json::array();
  for (const auto& c : checks) {
    json jc{{"model", c.model}, {"check", c.check}, {"status", c.status}, {"detail", c.detail}};
    jc["value"] = std::isnan(c.value) ? json(nullptr) : json(c.value);
    arr.push_back(jc);
  }
  j["checks"] = arr;
  return dump(j);
}

void add_sim_options(CLI::App* sub, SimConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--customers", cfg.n_customers, "customers per replication after warmup")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

std::string error_json(const std::string& code, const std::string& message) {
  std::string phrase = code;
  for (char& ch : phrase)
    if (ch == '_') ch = ' ';
  return json{{"schema_version", kSchemaVersion}, {"error", phrase}, {"code", code}, {"message", message}}.dump() + "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Waiting times, workload and ruin for queues with dependent service and inter-arrival times"};
  app.name("depq");
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* an = app.add_subcommand("analyze", "exact analysis of one model");
  an->add_option("--model", aa.model, "model JSON file")->required()->check(CLI::ExistingFile);
  an->add_option("--grid", aa.grid, "u values: lo:hi:n or comma list");
  an->add_option("--level", aa.level, "quantile level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_common(an, aa.common, "json");

  TableArgs ta;
  auto* tb = app.add_subcommand("table", "mean waiting time, atom and quantile tables");
  tb->add_option("which", ta.which, "varyK or varyRho")->required()->check(CLI::IsMember({"varyK", "varyRho"}));
  tb->add_option("--normalization", ta.normalization, "unit-arrival (lambda=1, mu=1/rho) or unit-service (mu=1, lambda=rho)")
      ->check(CLI::IsMember({"unit-arrival", "unit-service"}))
      ->capture_default_str();
  tb->add_option("--level", ta.level, "quantile level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  add_common(tb, ta.common, "csv");

  SimArgs sa;
  auto* sm = app.add_subcommand("simulate", "Monte Carlo estimates next to the exact values");
  sm->add_option("--model", sa.model, "model JSON file")->required()->check(CLI::ExistingFile);
  sm->add_option("--grid", sa.grid, "u values: lo:hi:n or comma list");
  add_sim_options(sm, sa.cfg);
  sm->add_option("--warmup", sa.cfg.warmup)->check(CLI::NonNegativeNumber)->capture_default_str();
  sm->add_option("--batches", sa.cfg.batches)->check(CLI::Range(2, 100000))->capture_default_str();
  sm->add_option("--replications", sa.cfg.replications)->check(CLI::Range(1, 1024))->capture_default_str();
  sm->add_option("--paths", sa.cfg.n_paths, "ruin paths per capital level")->check(CLI::PositiveNumber)->capture_default_str();
  sm->add_flag("--ruin", sa.ruin, "also simulate ordinary and delayed ruin");
  sm->add_option("--horizon", sa.horizon, "ruin horizon (default 50 E A K)")->check(CLI::PositiveNumber);
  add_common(sm, sa.common, "json");

  OrderingArgs oa;
  oa.cfg.n_customers = 100000;
  auto* od = app.add_subcommand("ordering", "stop-loss curves of A - B/c for the three scenarios");
  auto* k_opt = od->add_option("--K", oa.K, "uniform weights on 1..K")->check(CLI::Range(1, 200))->capture_default_str();
  od->add_option("--weights", oa.weights, "comma list of weights on 1..K")->excludes(k_opt);
  od->add_option("--lambda", oa.lambda)->check(CLI::PositiveNumber)->capture_default_str();
  od->add_option("--mu", oa.mu)->check(CLI::PositiveNumber)->capture_default_str();
  od->add_option("--grid", oa.grid, "thresholds t")->capture_default_str();
  add_sim_options(od, oa.cfg);
  od->add_flag("--strict", oa.strict, "exit 1 when a promised ordering fails");
  add_common(od, oa.common, "csv");

  VerifyArgs va;
  va.cfg.n_customers = 200000;
  auto* vf = app.add_subcommand("verify", "invariant checks over the default model sweep");
  add_sim_options(vf, va.cfg);
  vf->add_flag("--inject-fault", va.inject_fault, "move one root across the axis before validation");
  add_common(vf, va.common, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*an) emit(aa.common, cmd_analyze(aa), out);
    if (*tb) emit(ta.common, cmd_table(ta), out);
    if (*sm) emit(sa.common, cmd_simulate(sa), out);
    if (*od) emit(oa.common, cmd_ordering(oa), out);
    if (*vf) {
      bool failed = false;
      emit(va.common, cmd_verify(va, failed), out);
      if (failed) return kDomainError;
    }
  } catch (const Error& e) {
    err << error_json(error_code_name(e.code()), e.what());
    return kDomainError;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"depq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace depq::cli
