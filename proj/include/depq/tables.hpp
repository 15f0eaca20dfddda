#pragma once

#include <array>
#include <string>
#include <vector>

#include "depq/models.hpp"

namespace depq {

enum class TableKind { VaryK, VaryRho };

/// How (lambda, mu) are chosen for a row with load rho.
enum class Normalization {
  UnitArrival,  ///< lambda = 1, mu = 1 / rho
  UnitService,  ///< mu = 1, lambda = rho
};

TableKind table_kind_from_name(const std::string& name);  ///< "varyK" / "varyRho"
Normalization normalization_from_name(const std::string& name);  ///< "unit-arrival" / "unit-service"
std::string normalization_name(Normalization n);

/// Columns: E W (pos, ind, neg), P(W = 0) (pos, ind, neg), level-quantile of W (pos, ind, neg).
using TableColumns = std::array<double, 9>;

inline const std::array<const char*, 9> kTableColumnNames{
    "EW_pos", "EW_ind", "EW_neg", "atom_pos", "atom_ind", "atom_neg", "q_pos", "q_ind", "q_neg"};

struct TableRow {
  int K = 0;
  double rho = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  TableColumns computed{};
  TableColumns reference{};  ///< two-decimal reference values
  double max_abs_diff = 0.0;
};

/// Rows K in {2,4,7,14} at rho = .5, or rho in {.05,.25,.5,.75,.95} at K = 5; uniform M, c = 1.
std::vector<TableRow> reproduce_table(TableKind kind, Normalization norm, double level = 0.95);

/// Scenario order in each column triple.
DependenceModel table_model(int scenario, int K, double lambda, double mu);

}  // namespace depq
