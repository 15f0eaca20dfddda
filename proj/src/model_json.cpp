#include "depq/model_json.hpp"

#include <set>

#include "depq/errors.hpp"

namespace depq {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, "model json: " + msg); }

double number(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& v, const char* key) {
  if (!v.is_array()) bad(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) bad(std::string("field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void only(const json& j, std::set<std::string> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad("unknown field '" + it.key() + "'");
}

MixingDistribution mixing_from(const json& j) {
  const int given = int(j.contains("K")) + int(j.contains("weights")) + int(j.contains("alpha") || j.contains("T"));
  if (given != 1) bad("give exactly one of K, weights, alpha+T");
  if (j.contains("K")) {
    const int K = integer(j, "K");
    if (K < 1) bad("K must be >= 1");
    return FiniteSupport{uniform_weights(K)};
  }
  if (j.contains("weights")) return FiniteSupport{numbers(j.at("weights"), "weights")};
  if (!j.contains("alpha") || !j.contains("T")) bad("alpha and T go together");
  const auto a = numbers(j.at("alpha"), "alpha");
  const json& t = j.at("T");
  if (!t.is_array() || t.size() != a.size()) bad("T must be a square array matching alpha");
  DiscretePhaseType ph;
  ph.alpha = Eigen::RowVectorXd::Map(a.data(), Eigen::Index(a.size()));
  ph.T.resize(Eigen::Index(a.size()), Eigen::Index(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto row = numbers(t[i], "T");
    if (row.size() != a.size()) bad("T must be a square array matching alpha");
    for (std::size_t k = 0; k < row.size(); ++k) ph.T(Eigen::Index(i), Eigen::Index(k)) = row[k];
  }
  return ph;
}

}  // namespace

DependenceModel model_from_json(const json& j) {
  if (!j.is_object()) bad("expected an object");
  if (!j.contains("family") || !j.at("family").is_string()) bad("missing string field 'family'");
  Family fam;
  try {
    fam = family_from_name(j.at("family").get<std::string>());
  } catch (const Error& e) {
    bad(e.what());
  }
  const double c = j.contains("c") ? number(j, "c") : 1.0;
  switch (fam) {
    case Family::KibbleMoran:
      only(j, {"family", "c", "lambda", "mu", "m", "p"});
      return DependenceModel::kibble_moran(integer(j, "m"), number(j, "p"), number(j, "lambda"), number(j, "mu"), c);
    case Family::CheriyanRamabhadran: {
      only(j, {"family", "c", "orders", "beta"});
      if (!j.contains("orders") || !j.contains("beta")) bad("cheriyan_ramabhadran needs orders and beta");
      const json& o = j.at("orders");
      const auto b = numbers(j.at("beta"), "beta");
      if (!o.is_array() || o.size() != 3 || b.size() != 3) bad("orders and beta need three entries");
      std::array<int, 3> orders{};
      for (int k = 0; k < 3; ++k) {
        if (!o[k].is_number_integer()) bad("orders must be integers");
        orders[k] = o[k].get<int>();
      }
      return DependenceModel::cheriyan_ramabhadran(orders, {b[0], b[1], b[2]}, c);
    }
    default:
      only(j, {"family", "c", "lambda", "mu", "K", "weights", "alpha", "T"});
      return DependenceModel::mixed_erlang(fam, mixing_from(j), number(j, "lambda"), number(j, "mu"), c);
  }
}

json model_to_json(const DependenceModel& m) {
  json j;
  j["family"] = family_name(m.family);
  j["c"] = m.c;
  switch (m.family) {
    case Family::KibbleMoran:
      j["lambda"] = m.lambda;
      j["mu"] = m.mu;
      j["m"] = m.km_order;
      j["p"] = m.km_p;
      break;
    case Family::CheriyanRamabhadran:
      j["orders"] = m.cr_orders;
      j["beta"] = m.cr_rates;
      break;
    default:
      j["lambda"] = m.lambda;
      j["mu"] = m.mu;
      if (const auto* fs = std::get_if<FiniteSupport>(&m.mixing)) {
        j["weights"] = fs->weights;
      } else {
        const auto& ph = std::get<DiscretePhaseType>(m.mixing);
        j["alpha"] = std::vector<double>(ph.alpha.data(), ph.alpha.data() + ph.alpha.size());
        json t = json::array();
        for (Eigen::Index i = 0; i < ph.T.rows(); ++i) {
          json row = json::array();
          for (Eigen::Index k = 0; k < ph.T.cols(); ++k) row.push_back(ph.T(i, k));
          t.push_back(row);
        }
        j["T"] = t;
      }
  }
  return j;
}

DependenceModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  return model_from_json(j);
}

}  // namespace depq
