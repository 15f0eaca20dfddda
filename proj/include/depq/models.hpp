#pragma once

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "depq/expoly.hpp"
#include "depq/polynomial.hpp"

namespace depq {

/// P(M = k + 1) = weights[k], k = 0..K-1.
struct FiniteSupport {
  std::vector<double> weights;
};

/// P(M = n) = alpha T^{n-1} t with t = (I - T) 1; any defect 1 - sum(alpha) is mass at M = 0.
struct DiscretePhaseType {
  Eigen::RowVectorXd alpha;
  Eigen::MatrixXd T;
};

using MixingDistribution = std::variant<FiniteSupport, DiscretePhaseType>;

enum class Family {
  MixedErlangPositive,     ///< (Erlang(M, lambda), Erlang(M, mu))
  MixedErlangIndependent,  ///< (Erlang(M1, lambda), Erlang(M2, mu)), M1, M2 iid
  MixedErlangNegative,     ///< (Erlang(M, lambda), Erlang(K + 1 - M, mu))
  KibbleMoran,             ///< m-fold convolution of the Kibble-Moran bivariate exponential
  CheriyanRamabhadran,     ///< (Z0 + Z1, Z0 + Z2), Zk ~ Erlang(m_k, beta_k) independent
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Joint law of an inter-arrival time A and the adjacent service requirement B,
/// together with the server speed c. Immutable after construction; build through the
/// factory functions, which validate parameters.
struct DependenceModel {
  Family family = Family::MixedErlangPositive;
  double c = 1.0;
  double lambda = 1.0;  ///< rate of the A components
  double mu = 1.0;      ///< rate of the B components
  MixingDistribution mixing = FiniteSupport{{1.0}};
  int km_order = 0;  ///< Kibble-Moran m
  double km_p = 0.0;
  std::array<int, 3> cr_orders{0, 0, 0};
  std::array<double, 3> cr_rates{1.0, 1.0, 1.0};

  static DependenceModel mixed_erlang(Family family, MixingDistribution mixing, double lambda, double mu,
                                      double c = 1.0);
  static DependenceModel kibble_moran(int m, double p, double lambda, double mu, double c = 1.0);
  static DependenceModel cheriyan_ramabhadran(std::array<int, 3> orders, std::array<double, 3> rates,
                                              double c = 1.0);
};

enum class ScenarioKind { Positive, Independent, Negative };

/// Mixed-Erlang scenario with M ~ weights on {1..K}.
DependenceModel build_scenario(ScenarioKind kind, const std::vector<double>& weights, double lambda, double mu,
                               double c = 1.0);

/// Uniform weights on {1..K}.
std::vector<double> uniform_weights(int K);

/// One mixture component: A ~ Erlang(a_order, lambda), B ~ Erlang(b_order, mu), independent.
struct ErlangPair {
  int a_order;
  int b_order;
  double weight;
};

/// Finite component list for mixed-Erlang models with finite-support mixing; empty otherwise.
std::vector<ErlangPair> erlang_pairs(const DependenceModel& m);

/// E exp(-s1 A - s2 B).
std::complex<double> joint_lst(const DependenceModel& m, std::complex<double> s1, std::complex<double> s2);

/// E exp(-s Y), Y = B/c - A, as f(s)/g(s) with real coefficients, built by exact expansion
/// over the common denominator (no cancellation of shared factors).
CRational y_transform(const DependenceModel& m);

struct MomentReport {
  double EA, EB, VarA, VarB, Cov, corr, rho, EY;
};

MomentReport moments(const DependenceModel& m);

bool is_stable(const DependenceModel& m);

/// P(B > w).
ExpPolyMix marginal_b_tail(const DependenceModel& m);

struct PairSample {
  double a;  ///< inter-arrival time
  double b;  ///< service requirement
};

using Rng = std::mt19937_64;

/// Independent stream keyed by (seed, stream index).
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

PairSample sample_pair(const DependenceModel& m, Rng& rng);

/// First pair of a stationary-started process: the size-biased A-component, thinned by
/// an independent uniform, together with the B of the same component.
PairSample sample_residual_pair(const DependenceModel& m, Rng& rng);

/// Component index draw for the residual pair of a finite mixture: probabilities
/// proportional to weight * E[A | component].
std::vector<double> residual_component_probabilities(const DependenceModel& m);

/// Precomputed sampler for repeated draws from one model.
class PairSampler {
 public:
  explicit PairSampler(const DependenceModel& m);
  PairSample operator()(Rng& rng) const;
  /// See sample_residual_pair.
  PairSample residual(Rng& rng) const;
  const DependenceModel& model() const { return model_; }

 private:
  DependenceModel model_;
  std::vector<ErlangPair> pairs_;
  std::vector<double> cumulative_;
  std::vector<double> residual_cumulative_;
  double phase_mean_ = 0.0;
};

}  // namespace depq
