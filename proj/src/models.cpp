#include "depq/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depq/errors.hpp"
#include "depq/inversion.hpp"

namespace depq {

namespace {

using cd = std::complex<double>;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be > 0");
}

void validate(const FiniteSupport& fs) {
  if (fs.weights.empty()) throw Error(ErrorCode::InvalidDistribution, "mixing weights are empty");
  double total = 0.0;
  for (double w : fs.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidDistribution, "mixing weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidDistribution, "mixing weights do not sum to 1");
}

void validate(const DiscretePhaseType& ph) {
  const auto n = ph.T.rows();
  if (n == 0 || ph.T.cols() != n || ph.alpha.size() != n)
    throw Error(ErrorCode::InvalidDistribution, "phase-type alpha/T dimensions disagree");
  if ((ph.alpha.array() < 0.0).any() || ph.alpha.sum() > 1.0 + 1e-12)
    throw Error(ErrorCode::InvalidDistribution, "phase-type alpha must be nonnegative with sum <= 1");
  if ((ph.T.array() < 0.0).any() || (ph.T.rowwise().sum().array() > 1.0 + 1e-12).any())
    throw Error(ErrorCode::InvalidDistribution, "phase-type T must be substochastic");
  const Eigen::MatrixXd IminusT = Eigen::MatrixXd::Identity(n, n) - ph.T;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(IminusT);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "I - T is singular");
}

double defect(const DiscretePhaseType& ph) { return std::max(0.0, 1.0 - ph.alpha.sum()); }

Eigen::VectorXd exit_vector(const DiscretePhaseType& ph) {
  return (Eigen::MatrixXd::Identity(ph.T.rows(), ph.T.cols()) - ph.T) * Eigen::VectorXd::Ones(ph.T.rows());
}

/// chi(v) = det(vI - T) and N(v) = alpha adj(vI - T) t via Faddeev-LeVerrier.
void pgf_in_inverse_variable(const DiscretePhaseType& ph, RPoly& numer, RPoly& denom) {
  const int n = static_cast<int>(ph.T.rows());
  const Eigen::VectorXd t = exit_vector(ph);
  Eigen::VectorXd chi = Eigen::VectorXd::Zero(n + 1);
  Eigen::VectorXd num = Eigen::VectorXd::Zero(n);
  chi[n] = 1.0;
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    Mk = ph.T * Mk + chi[n - k + 1] * I;
    num[n - k] = ph.alpha * Mk * t;
    chi[n - k] = -(ph.T * Mk).trace() / k;
  }
  numer = RPoly(num);
  denom = RPoly(chi);
}

CPoly to_complex(const RPoly& p) { return p.cast<cd>(); }

double erlang_draw(int order, double rate, Rng& rng) {
  if (order <= 0) return 0.0;
  std::exponential_distribution<double> expo(1.0);
  if (order > 40) return std::gamma_distribution<double>(order, 1.0 / rate)(rng);
  double s = 0.0;
  for (int k = 0; k < order; ++k) s += expo(rng);
  return s / rate;
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

int draw_index(const std::vector<double>& cumulative, Rng& rng) {
  const double u = uniform01(rng) * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min(static_cast<int>(it - cumulative.begin()), static_cast<int>(cumulative.size()) - 1);
}

int draw_phase_count(const DiscretePhaseType& ph, Rng& rng) {
  const int n = static_cast<int>(ph.T.rows());
  double u = uniform01(rng);
  int state = -1;
  for (int i = 0; i < n; ++i) {
    if (u < ph.alpha[i]) {
      state = i;
      break;
    }
    u -= ph.alpha[i];
  }
  if (state < 0) return 0;
  int count = 1;
  for (;;) {
    double v = uniform01(rng);
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (v < ph.T(state, j)) {
        next = j;
        break;
      }
      v -= ph.T(state, j);
    }
    if (next < 0) return count;
    state = next;
    ++count;
  }
}

/// Size-biased draw of M: P(n) proportional to n P(M = n), by sequential inversion.
int draw_size_biased_phase_count(const DiscretePhaseType& ph, double mean_count, Rng& rng) {
  const Eigen::VectorXd t = exit_vector(ph);
  Eigen::RowVectorXd v = ph.alpha;
  const double target = uniform01(rng) * mean_count;
  double acc = 0.0;
  for (int n = 1; n < 1000000; ++n) {
    acc += n * v.dot(t);
    if (acc >= target) return n;
    v = v * ph.T;
    if (v.sum() < 1e-300) return n;
  }
  return 1000000;
}

struct PhaseMoments {
  double mean;
  double second;  // E M^2
};

PhaseMoments phase_moments(const DiscretePhaseType& ph) {
  const auto n = ph.T.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd N = (I - ph.T).inverse();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const double m1 = ph.alpha * N * ones;
  const double fact2 = 2.0 * (ph.alpha * ph.T * N * N * ones)(0);
  return {m1, fact2 + m1};
}

cd phase_pgf(const DiscretePhaseType& ph, cd z) {
  const auto n = ph.T.rows();
  const Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(n, n) / z - ph.T.cast<cd>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(R);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularMatrix, "phase-type resolvent is singular");
  const Eigen::VectorXcd x = lu.solve(exit_vector(ph).cast<cd>());
  return defect(ph) + (ph.alpha.cast<cd>() * x)(0);
}

/// f/g for P_M(z) with 1/z = v(s) polynomial.
void compose_pgf(const DiscretePhaseType& ph, const RPoly& v, RPoly& f, RPoly& g) {
  RPoly numer, denom;
  pgf_in_inverse_variable(ph, numer, denom);
  g = compose(denom, v);
  f = compose(numer, v) + defect(ph) * g;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::MixedErlangPositive: return "positive";
    case Family::MixedErlangIndependent: return "independent";
    case Family::MixedErlangNegative: return "negative";
    case Family::KibbleMoran: return "kibble_moran";
    case Family::CheriyanRamabhadran: return "cheriyan_ramabhadran";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::MixedErlangPositive, Family::MixedErlangIndependent, Family::MixedErlangNegative,
                   Family::KibbleMoran, Family::CheriyanRamabhadran})
    if (family_name(f) == name) return f;
  throw Error(ErrorCode::InvalidArgument, "unknown model family '" + name + "'");
}

DependenceModel DependenceModel::mixed_erlang(Family family, MixingDistribution mixing, double lambda, double mu,
                                              double c) {
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  require_positive(c, "c");
  if (family != Family::MixedErlangPositive && family != Family::MixedErlangIndependent &&
      family != Family::MixedErlangNegative && family != Family::KibbleMoran)
    throw Error(ErrorCode::InvalidArgument, "mixed_erlang: not a mixed-Erlang family");
  std::visit([](const auto& mix) { validate(mix); }, mixing);
  if (family == Family::MixedErlangNegative && !std::holds_alternative<FiniteSupport>(mixing))
    throw Error(ErrorCode::InvalidDistribution, "negative scenario requires finite-support mixing");
  DependenceModel m;
  m.family = family;
  m.mixing = std::move(mixing);
  m.lambda = lambda;
  m.mu = mu;
  m.c = c;
  return m;
}

DependenceModel DependenceModel::kibble_moran(int order, double p, double lambda, double mu, double c) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "Kibble-Moran order must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "Kibble-Moran p must lie in (0, 1]");
  DiscretePhaseType ph;
  ph.alpha = Eigen::RowVectorXd::Zero(order);
  ph.alpha[0] = 1.0;
  ph.T = (1.0 - p) * Eigen::MatrixXd::Identity(order, order);
  for (int i = 0; i + 1 < order; ++i) ph.T(i, i + 1) = p;
  DependenceModel m = mixed_erlang(Family::KibbleMoran, ph, lambda, mu, c);
  m.km_order = order;
  m.km_p = p;
  return m;
}

DependenceModel DependenceModel::cheriyan_ramabhadran(std::array<int, 3> orders, std::array<double, 3> rates,
                                                      double c) {
  require_positive(c, "c");
  for (int k = 0; k < 3; ++k) {
    if (orders[k] < 0) throw Error(ErrorCode::InvalidArgument, "Cheriyan-Ramabhadran orders must be >= 0");
    require_positive(rates[k], "Cheriyan-Ramabhadran rate");
  }
  if (orders[0] + orders[1] < 1 || orders[0] + orders[2] < 1)
    throw Error(ErrorCode::InvalidArgument, "Cheriyan-Ramabhadran A and B must both be nondegenerate");
  DependenceModel m;
  m.family = Family::CheriyanRamabhadran;
  m.cr_orders = orders;
  m.cr_rates = rates;
  m.c = c;
  return m;
}

std::vector<double> uniform_weights(int K) {
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "K must be >= 1");
  return std::vector<double>(K, 1.0 / K);
}

DependenceModel build_scenario(ScenarioKind kind, const std::vector<double>& weights, double lambda, double mu,
                               double c) {
  Family f = Family::MixedErlangPositive;
  if (kind == ScenarioKind::Independent) f = Family::MixedErlangIndependent;
  if (kind == ScenarioKind::Negative) f = Family::MixedErlangNegative;
  return DependenceModel::mixed_erlang(f, FiniteSupport{weights}, lambda, mu, c);
}

std::vector<ErlangPair> erlang_pairs(const DependenceModel& m) {
  std::vector<ErlangPair> pairs;
  const auto* fs = std::get_if<FiniteSupport>(&m.mixing);
  if (m.family == Family::CheriyanRamabhadran || fs == nullptr) return pairs;
  const auto& w = fs->weights;
  const int K = static_cast<int>(w.size());
  switch (m.family) {
    case Family::MixedErlangPositive:
    case Family::KibbleMoran:
      for (int i = 0; i < K; ++i)
        if (w[i] > 0) pairs.push_back({i + 1, i + 1, w[i]});
      break;
    case Family::MixedErlangIndependent:
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
          if (w[i] * w[j] > 0) pairs.push_back({i + 1, j + 1, w[i] * w[j]});
      break;
    case Family::MixedErlangNegative:
      for (int i = 0; i < K; ++i)
        if (w[i] > 0) pairs.push_back({i + 1, K - i, w[i]});
      break;
    default: break;
  }
  return pairs;
}

cd joint_lst(const DependenceModel& m, cd s1, cd s2) {
  if (m.family == Family::CheriyanRamabhadran) {
    const auto& k = m.cr_orders;
    const auto& b = m.cr_rates;
    return std::pow(b[0] / (b[0] + s1 + s2), k[0]) * std::pow(b[1] / (b[1] + s1), k[1]) *
           std::pow(b[2] / (b[2] + s2), k[2]);
  }
  const cd za = m.lambda / (m.lambda + s1);
  const cd zb = m.mu / (m.mu + s2);
  if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) {
    if (m.family == Family::MixedErlangIndependent) return phase_pgf(*ph, za) * phase_pgf(*ph, zb);
    return phase_pgf(*ph, za * zb);
  }
  cd acc = 0.0;
  for (const auto& p : erlang_pairs(m)) acc += p.weight * std::pow(za, p.a_order) * std::pow(zb, p.b_order);
  return acc;
}

CRational y_transform(const DependenceModel& m) {
  const double lam = m.lambda;
  const double mub = m.c * m.mu;  // B/c ~ Erlang(., c mu)
  if (m.family == Family::CheriyanRamabhadran) {
    const auto& k = m.cr_orders;
    const auto& b = m.cr_rates;
    const double kappa = 1.0 / m.c - 1.0;
    RPoly g = pow(RPoly{b[1], -1.0}, k[1]) * pow(RPoly{m.c * b[2], 1.0}, k[2]);
    double f0 = std::pow(b[1], k[1]) * std::pow(m.c * b[2], k[2]);
    if (k[0] > 0 && std::abs(kappa) > 1e-15) {
      g = g * pow(RPoly{b[0], kappa}, k[0]);
      f0 *= std::pow(b[0], k[0]);
    }
    return CRational(to_complex(RPoly{f0}), to_complex(g));
  }
  if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) {
    RPoly f, g;
    if (m.family == Family::MixedErlangIndependent) {
      RPoly fa, ga, fb, gb;
      compose_pgf(*ph, RPoly{1.0, -1.0 / lam}, fa, ga);
      compose_pgf(*ph, RPoly{1.0, 1.0 / mub}, fb, gb);
      f = fa * fb;
      g = ga * gb;
    } else {
      // 1/z = (lambda - s)(c mu + s) / (lambda c mu)
      const RPoly v = (1.0 / (lam * mub)) * (RPoly{lam, -1.0} * RPoly{mub, 1.0});
      compose_pgf(*ph, v, f, g);
    }
    return CRational(to_complex(f), to_complex(g));
  }
  const auto pairs = erlang_pairs(m);
  int A = 0, B = 0;
  for (const auto& p : pairs) A = std::max(A, p.a_order), B = std::max(B, p.b_order);
  std::vector<RPoly> pa(A + 1), pb(B + 1);
  pa[0] = pb[0] = RPoly{1.0};
  for (int k = 1; k <= A; ++k) pa[k] = pa[k - 1] * RPoly{lam, -1.0};
  for (int k = 1; k <= B; ++k) pb[k] = pb[k - 1] * RPoly{mub, 1.0};
  RPoly f;
  for (const auto& p : pairs) {
    const double coef = p.weight * std::pow(lam, p.a_order) * std::pow(mub, p.b_order);
    f = f + coef * (pa[A - p.a_order] * pb[B - p.b_order]);
  }
  return CRational(to_complex(f), to_complex(pa[A] * pb[B]));
}

MomentReport moments(const DependenceModel& m) {
  MomentReport r{};
  double EA2 = 0, EB2 = 0, EAB = 0;
  if (m.family == Family::CheriyanRamabhadran) {
    const auto& k = m.cr_orders;
    const auto& b = m.cr_rates;
    const double z0 = k[0] / b[0], v0 = k[0] / (b[0] * b[0]);
    r.EA = z0 + k[1] / b[1];
    r.EB = z0 + k[2] / b[2];
    r.VarA = v0 + k[1] / (b[1] * b[1]);
    r.VarB = v0 + k[2] / (b[2] * b[2]);
    r.Cov = v0;
  } else if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) {
    const PhaseMoments pm = phase_moments(*ph);
    const double varM = pm.second - pm.mean * pm.mean;
    r.EA = pm.mean / m.lambda;
    r.EB = pm.mean / m.mu;
    r.VarA = pm.mean / (m.lambda * m.lambda) + varM / (m.lambda * m.lambda);
    r.VarB = pm.mean / (m.mu * m.mu) + varM / (m.mu * m.mu);
    r.Cov = m.family == Family::MixedErlangIndependent ? 0.0 : varM / (m.lambda * m.mu);
  } else {
    r.EA = r.EB = 0;
    for (const auto& p : erlang_pairs(m)) {
      r.EA += p.weight * p.a_order / m.lambda;
      r.EB += p.weight * p.b_order / m.mu;
      EA2 += p.weight * p.a_order * (p.a_order + 1.0) / (m.lambda * m.lambda);
      EB2 += p.weight * p.b_order * (p.b_order + 1.0) / (m.mu * m.mu);
      EAB += p.weight * p.a_order * double(p.b_order) / (m.lambda * m.mu);
    }
    r.VarA = EA2 - r.EA * r.EA;
    r.VarB = EB2 - r.EB * r.EB;
    r.Cov = EAB - r.EA * r.EB;
  }
  r.corr = (r.VarA > 0 && r.VarB > 0) ? r.Cov / std::sqrt(r.VarA * r.VarB) : 0.0;
  r.rho = r.EB / (m.c * r.EA);
  r.EY = r.EB / m.c - r.EA;
  return r;
}

bool is_stable(const DependenceModel& m) { return moments(m).EY < 0.0; }

ExpPolyMix marginal_b_tail(const DependenceModel& m) {
  if (m.family == Family::CheriyanRamabhadran) {
    const auto& k = m.cr_orders;
    const auto& b = m.cr_rates;
    if (k[0] == 0) return erlang_tail(k[2], b[2]);
    if (k[2] == 0) return erlang_tail(k[0], b[0]);
    return integrate_tail(convolve(erlang_density(k[0], b[0]), erlang_density(k[2], b[2])));
  }
  if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) {
    // E e^{-sB} = P_M(mu / (mu + s))
    RPoly f, g;
    compose_pgf(*ph, RPoly{1.0, 1.0 / m.mu}, f, g);
    return invert_tail(CRational(to_complex(f), to_complex(g)));
  }
  std::vector<double> wb;
  for (const auto& p : erlang_pairs(m)) {
    if (static_cast<int>(wb.size()) < p.b_order) wb.resize(p.b_order, 0.0);
    wb[p.b_order - 1] += p.weight;
  }
  ExpPolyMix tail;
  for (int k = 0; k < static_cast<int>(wb.size()); ++k)
    if (wb[k] > 0) tail = tail + wb[k] * erlang_tail(k + 1, m.mu);
  return tail;
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return Rng(seq);
}

std::vector<double> residual_component_probabilities(const DependenceModel& m) {
  std::vector<double> prob;
  double total = 0.0;
  for (const auto& p : erlang_pairs(m)) {
    prob.push_back(p.weight * p.a_order);
    total += prob.back();
  }
  for (double& x : prob) x /= total;
  return prob;
}

PairSample sample_pair(const DependenceModel& m, Rng& rng) { return PairSampler(m)(rng); }

PairSample sample_residual_pair(const DependenceModel& m, Rng& rng) { return PairSampler(m).residual(rng); }

PairSampler::PairSampler(const DependenceModel& m) : model_(m), pairs_(erlang_pairs(m)) {
  double acc = 0.0, racc = 0.0;
  for (const auto& p : pairs_) {
    cumulative_.push_back(acc += p.weight);
    residual_cumulative_.push_back(racc += p.weight * p.a_order);
  }
  if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) phase_mean_ = phase_moments(*ph).mean;
}

PairSample PairSampler::operator()(Rng& rng) const {
  const auto& m = model_;
  if (m.family == Family::CheriyanRamabhadran) {
    const double z0 = erlang_draw(m.cr_orders[0], m.cr_rates[0], rng);
    const double z1 = erlang_draw(m.cr_orders[1], m.cr_rates[1], rng);
    const double z2 = erlang_draw(m.cr_orders[2], m.cr_rates[2], rng);
    return {z0 + z1, z0 + z2};
  }
  if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) {
    const int ma = draw_phase_count(*ph, rng);
    const int mb = m.family == Family::MixedErlangIndependent ? draw_phase_count(*ph, rng) : ma;
    const double a = erlang_draw(ma, m.lambda, rng);
    return {a, erlang_draw(mb, m.mu, rng)};
  }
  const auto& p = pairs_[draw_index(cumulative_, rng)];
  const double a = erlang_draw(p.a_order, m.lambda, rng);
  return {a, erlang_draw(p.b_order, m.mu, rng)};
}

PairSample PairSampler::residual(Rng& rng) const {
  const auto& m = model_;
  if (m.family == Family::CheriyanRamabhadran) {
    const auto& k = m.cr_orders;
    const auto& b = m.cr_rates;
    const double w0 = k[0] / b[0], w1 = k[1] / b[1];
    const bool bias_shared = uniform01(rng) * (w0 + w1) < w0;
    const double z0 = erlang_draw(k[0] + (bias_shared ? 1 : 0), b[0], rng);
    const double z1 = erlang_draw(k[1] + (bias_shared ? 0 : 1), b[1], rng);
    const double z2 = erlang_draw(k[2], b[2], rng);
    return {uniform01(rng) * (z0 + z1), z0 + z2};
  }
  if (const auto* ph = std::get_if<DiscretePhaseType>(&m.mixing)) {
    const int ma = draw_size_biased_phase_count(*ph, phase_mean_, rng);
    const int mb = m.family == Family::MixedErlangIndependent ? draw_phase_count(*ph, rng) : ma;
    const double a = erlang_draw(ma + 1, m.lambda, rng);
    const double b = erlang_draw(mb, m.mu, rng);
    return {uniform01(rng) * a, b};
  }
  const auto& p = pairs_[draw_index(residual_cumulative_, rng)];
  const double a = erlang_draw(p.a_order + 1, m.lambda, rng);
  const double b = erlang_draw(p.b_order, m.mu, rng);
  return {uniform01(rng) * a, b};
}

}  // namespace depq
