#include "depq/tables.hpp"

#include <cmath>

#include "depq/errors.hpp"
#include "depq/queuerisk.hpp"

namespace depq {

namespace {

struct RefRow {
  int K;
  double rho;
  TableColumns values;
};

const std::vector<RefRow>& reference_rows(TableKind kind) {
  static const std::vector<RefRow> vary_k{
      {2, 0.5, {0.86, 1.11, 1.36, 0.57, 0.54, 0.51, 4.36, 5.31, 6.25}},
      {4, 0.5, {0.68, 1.37, 2.11, 0.67, 0.58, 0.52, 3.93, 6.78, 9.48}},
      {7, 0.5, {0.51, 1.78, 3.22, 0.75, 0.61, 0.53, 3.39, 9.09, 14.35}},
      {14, 0.5, {0.31, 2.79, 5.82, 0.85, 0.64, 0.54, 2.33, 14.58, 25.74}},
  };
  static const std::vector<RefRow> vary_rho{
      {5, 0.05, {0.01, 0.07, 0.15, 0.988, 0.96, 0.95, 0.0, 0.0, 0.0}},
      {5, 0.25, {0.12, 0.47, 0.88, 0.90, 0.82, 0.76, 0.85, 3.54, 5.72}},
      {5, 0.5, {0.62, 1.50, 2.48, 0.70, 0.59, 0.52, 3.74, 7.54, 11.1}},
      {5, 0.75, {2.48, 4.77, 7.15, 0.39, 0.32, 0.27, 10.14, 17.81, 25.5}},
      {5, 0.95, {18.4, 31.4, 44.48, 0.08, 0.066, 0.056, 58.26, 97.89, 137.58}},
  };
  return kind == TableKind::VaryK ? vary_k : vary_rho;
}

}  // namespace

TableKind table_kind_from_name(const std::string& name) {
  if (name == "varyK") return TableKind::VaryK;
  if (name == "varyRho") return TableKind::VaryRho;
  throw Error(ErrorCode::InvalidArgument, "unknown table '" + name + "' (varyK or varyRho)");
}

Normalization normalization_from_name(const std::string& name) {
  if (name == "unit-arrival") return Normalization::UnitArrival;
  if (name == "unit-service") return Normalization::UnitService;
  throw Error(ErrorCode::InvalidArgument, "unknown normalization '" + name + "'");
}

std::string normalization_name(Normalization n) {
  return n == Normalization::UnitArrival ? "unit-arrival" : "unit-service";
}

DependenceModel table_model(int scenario, int K, double lambda, double mu) {
  constexpr ScenarioKind kinds[] = {ScenarioKind::Positive, ScenarioKind::Independent, ScenarioKind::Negative};
  return build_scenario(kinds[scenario], uniform_weights(K), lambda, mu);
}

std::vector<TableRow> reproduce_table(TableKind kind, Normalization norm, double level) {
  AnalyzeOptions opt;
  opt.level = level;
  std::vector<TableRow> out;
  for (const auto& ref : reference_rows(kind)) {
    TableRow row;
    row.K = ref.K;
    row.rho = ref.rho;
    row.lambda = norm == Normalization::UnitArrival ? 1.0 : ref.rho;
    row.mu = norm == Normalization::UnitArrival ? 1.0 / ref.rho : 1.0;
    row.reference = ref.values;
    for (int s = 0; s < 3; ++s) {
      const auto r = analyze(table_model(s, ref.K, row.lambda, row.mu), opt);
      row.computed[s] = r.meanW;
      row.computed[3 + s] = r.atomW;
      row.computed[6 + s] = r.q;
    }
    for (int k = 0; k < 9; ++k)
      row.max_abs_diff = std::max(row.max_abs_diff, std::abs(row.computed[k] - row.reference[k]));
    out.push_back(row);
  }
  return out;
}

}  // namespace depq
