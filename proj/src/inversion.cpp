#include "depq/inversion.hpp"

#include <cmath>
#include <string>

#include "depq/errors.hpp"
#include "depq/models.hpp"

namespace depq {

namespace {

using cd = std::complex<double>;

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

RootSet roots_or_empty(const CPoly& p, const RootFinderOptions& options) {
  if (p.degree() < 1) return {};
  return find_roots(p, options);
}

/// int_0^inf y^p e^{alpha y} (t + y)^k e^{beta (t + y)} dy, Re(alpha + beta) < 0.
cd shifted_product_integral(int p, cd alpha, int k, cd beta, double t) {
  const cd gamma = -(alpha + beta);
  cd acc = 0.0;
  for (int j = 0; j <= k; ++j)
    acc += binomial(k, j) * std::pow(t, k - j) * factorial(p + j) / std::pow(gamma, p + j + 1);
  return acc * std::exp(beta * t);
}

/// E (X - Y - t)_+ for t >= 0, X given by its tail, Y by its density (no atoms).
double positive_part_of_difference(const ExpPolyMix& tail_x, const ExpPolyMix& density_y, double t) {
  const ExpPolyMix sl = integrate_tail(tail_x);  // x -> E (X - x)_+, x >= 0
  cd acc = 0.0;
  for (const auto& fy : density_y.terms)
    for (const auto& s : sl.terms)
      acc += fy.coef * s.coef * shifted_product_integral(fy.power, fy.rate, s.power, s.rate, t);
  return acc.real();
}

const std::vector<ErlangPair>& require_pairs(const std::vector<ErlangPair>& pairs) {
  if (pairs.empty())
    throw Error(ErrorCode::InvalidArgument, "difference stop-loss needs a mixed-Erlang model with finite support");
  return pairs;
}

}  // namespace

cd FactoredRational::operator()(cd s) const {
  cd v = gain;
  for (const auto& z : zeros.roots) v *= std::pow(s - z.location, z.multiplicity);
  for (const auto& p : poles.roots) v /= std::pow(s - p.location, p.multiplicity);
  return v;
}

CRational FactoredRational::expand() const { return CRational(poly_from_roots(zeros, gain), poly_from_roots(poles)); }

void cancel_common(FactoredRational& r, double radius) {
  for (auto& z : r.zeros.roots) {
    for (auto& p : r.poles.roots) {
      if (z.multiplicity == 0 || p.multiplicity == 0) continue;
      if (std::abs(z.location - p.location) >= radius * (1.0 + std::abs(p.location))) continue;
      const int k = std::min(z.multiplicity, p.multiplicity);
      z.multiplicity -= k;
      p.multiplicity -= k;
    }
  }
  std::erase_if(r.zeros.roots, [](const Root& x) { return x.multiplicity == 0; });
  std::erase_if(r.poles.roots, [](const Root& x) { return x.multiplicity == 0; });
}

FactoredRational factor(const CRational& r, const RootFinderOptions& options) {
  if (r.num().is_zero()) throw Error(ErrorCode::InvalidArgument, "factor: zero numerator");
  FactoredRational out;
  out.gain = r.num().leading() / r.den().leading();
  out.zeros = roots_or_empty(r.num(), options);
  out.poles = roots_or_empty(r.den(), options);
  cancel_common(out, options.cluster_radius);
  return out;
}

ExpPolyMix invert_density(const FactoredRational& lst) {
  if (lst.num_degree() > lst.den_degree())
    throw Error(ErrorCode::InvalidArgument, "invert: numerator degree exceeds denominator degree");
  ExpPolyMix out;
  if (lst.num_degree() == lst.den_degree()) out.atom0 = lst.gain.real();
  const auto& poles = lst.poles.roots;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const cd p = poles[i].location;
    const int m = poles[i].multiplicity;
    if (p.real() >= 0.0)
      throw Error(ErrorCode::PoleOnAxis, "invert: pole with nonnegative real part at " + std::to_string(p.real()) +
                                             (p.imag() >= 0 ? "+" : "") + std::to_string(p.imag()) + "i");
    // Taylor coefficients of h(s) = (s - p)^m * lst(s) at p, via the logarithmic derivative.
    std::vector<cd> a(m), b(m, 0.0);
    a[0] = lst.gain;
    for (const auto& z : lst.zeros.roots) a[0] *= std::pow(p - z.location, z.multiplicity);
    for (std::size_t j = 0; j < poles.size(); ++j)
      if (j != i) a[0] /= std::pow(p - poles[j].location, poles[j].multiplicity);
    for (int k = 0; k + 1 < m; ++k) {
      const double sign = (k % 2) ? -1.0 : 1.0;
      for (const auto& z : lst.zeros.roots) b[k] += sign * double(z.multiplicity) / std::pow(p - z.location, k + 1);
      for (std::size_t j = 0; j < poles.size(); ++j)
        if (j != i) b[k] -= sign * double(poles[j].multiplicity) / std::pow(p - poles[j].location, k + 1);
    }
    for (int n = 0; n + 1 < m; ++n) {
      cd acc = 0.0;
      for (int k = 0; k <= n; ++k) acc += b[k] * a[n - k];
      a[n + 1] = acc / double(n + 1);
    }
    // coefficient of (s - p)^{-j} is a[m - j]; inverse transform u^{j-1}/(j-1)! e^{pu}
    for (int j = 1; j <= m; ++j) out.terms.push_back({a[m - j] / factorial(j - 1), j - 1, p});
  }
  return simplify(out);
}

ExpPolyMix invert_density(const CRational& lst) { return invert_density(factor(lst)); }

ExpPolyMix invert_tail(const FactoredRational& lst) { return integrate_tail(invert_density(lst)); }

ExpPolyMix invert_tail(const CRational& lst) { return invert_tail(factor(lst)); }

cd lst_from_tail(const ExpPolyMix& tail, cd s) { return 1.0 - s * tail.laplace(s); }

double difference_mean(const DependenceModel& m) {
  const MomentReport r = moments(m);
  return r.EA - r.EB / m.c;
}

double difference_stop_loss(const DependenceModel& m, double t) {
  const auto pairs = erlang_pairs(m);
  require_pairs(pairs);
  const double cmu = m.c * m.mu;
  double acc = 0.0;
  for (const auto& p : pairs) {
    double v;
    if (t >= 0.0) {
      v = positive_part_of_difference(erlang_tail(p.a_order, m.lambda), erlang_density(p.b_order, cmu), t);
    } else {
      // E (D - t)_+ = E D - t + E (t - D)_+
      const double ed = p.a_order / m.lambda - p.b_order / cmu;
      v = ed - t + positive_part_of_difference(erlang_tail(p.b_order, cmu), erlang_density(p.a_order, m.lambda), -t);
    }
    acc += p.weight * v;
  }
  return acc;
}

}  // namespace depq
