#include "depq/expoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depq/errors.hpp"

namespace depq {

namespace {

using cd = std::complex<double>;

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

bool same_rate(cd a, cd b) {
  return std::abs(a - b) <= kRateMergeTolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
}

void require_decaying(const ExpTerm& t) {
  if (!(t.rate.real() < 0.0))
    throw Error(ErrorCode::InvalidArgument, "exponential-polynomial term does not decay (Re rate >= 0)");
}

}  // namespace

cd ExpPolyMix::value(cd u) const {
  cd acc = 0.0;
  for (const auto& t : terms) acc += t.coef * std::pow(u, t.power) * std::exp(t.rate * u);
  return acc;
}

double ExpPolyMix::operator()(double u) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    const cd e = std::exp(t.rate * u);
    acc += (t.coef * e).real() * (t.power == 0 ? 1.0 : std::pow(u, t.power));
  }
  return acc;
}

double ExpPolyMix::derivative(double u) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    const cd e = std::exp(t.rate * u);
    cd d = t.coef * t.rate * std::pow(u, t.power);
    if (t.power > 0) d += t.coef * static_cast<double>(t.power) * std::pow(u, t.power - 1);
    acc += (d * e).real();
  }
  return acc;
}

cd ExpPolyMix::laplace(cd s) const {
  cd acc = 0.0;
  for (const auto& t : terms) acc += t.coef * factorial(t.power) / std::pow(s - t.rate, t.power + 1);
  return acc;
}

double ExpPolyMix::abscissa() const {
  double a = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) a = std::max(a, t.rate.real());
  return a;
}

ExpPolyMix simplify(const ExpPolyMix& f) {
  ExpPolyMix out;
  out.atom0 = f.atom0;
  for (const auto& t : f.terms) {
    if (t.coef == cd(0.0)) continue;
    auto it = std::find_if(out.terms.begin(), out.terms.end(),
                           [&](const ExpTerm& o) { return o.power == t.power && same_rate(o.rate, t.rate); });
    if (it == out.terms.end())
      out.terms.push_back(t);
    else
      it->coef += t.coef;
  }
  std::erase_if(out.terms, [](const ExpTerm& t) { return t.coef == cd(0.0); });
  return out;
}

ExpPolyMix operator+(const ExpPolyMix& a, const ExpPolyMix& b) {
  ExpPolyMix out = a;
  out.atom0 += b.atom0;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return simplify(out);
}

ExpPolyMix operator*(double k, const ExpPolyMix& a) {
  ExpPolyMix out = a;
  out.atom0 *= k;
  for (auto& t : out.terms) t.coef *= k;
  return out;
}

ExpPolyMix dilate(const ExpPolyMix& f, double c) {
  ExpPolyMix out = f;
  for (auto& t : out.terms) {
    t.coef /= std::pow(c, t.power);
    t.rate /= c;
  }
  return out;
}

ExpPolyMix integrate_tail(const ExpPolyMix& f) {
  ExpPolyMix out;
  out.atom0 = f.atom0;
  for (const auto& t : f.terms) {
    require_decaying(t);
    const cd a = -t.rate;
    // int_t^inf u^k e^{-a u} du = e^{-a t} sum_j k!/j! t^j / a^{k-j+1}
    for (int j = 0; j <= t.power; ++j)
      out.terms.push_back({t.coef * (factorial(t.power) / factorial(j)) / std::pow(a, t.power - j + 1), j, t.rate});
  }
  return simplify(out);
}

double integral(const ExpPolyMix& f) {
  cd acc = 0.0;
  for (const auto& t : f.terms) {
    require_decaying(t);
    acc += t.coef * factorial(t.power) / std::pow(-t.rate, t.power + 1);
  }
  return acc.real();
}

double mean(const ExpPolyMix& tail) { return integral(tail); }

double stop_loss(const ExpPolyMix& tail, double t) {
  if (t <= 0.0) return mean(tail) - t;
  return integrate_tail(tail)(t);
}

double quantile(const ExpPolyMix& tail, double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
  const double target = 1.0 - p;
  if (tail(0.0) <= target) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (tail(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw Error(ErrorCode::InvalidArgument, "quantile: tail does not decay");
  }
  while (hi - lo > 1e-10 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

ExpPolyMix convolve(const ExpPolyMix& f, const ExpPolyMix& g) {
  ExpPolyMix out;
  out.atom0 = f.atom0 * g.atom0;
  for (const auto& t : g.terms) out.terms.push_back({f.atom0 * t.coef, t.power, t.rate});
  for (const auto& t : f.terms) out.terms.push_back({g.atom0 * t.coef, t.power, t.rate});

  for (const auto& x : f.terms) {
    for (const auto& y : g.terms) {
      const cd coef = x.coef * y.coef;
      const int a = x.power, b = y.power;
      if (same_rate(x.rate, y.rate)) {
        // int_0^u x^a (u-x)^b dx = a! b! / (a+b+1)! u^{a+b+1}
        out.terms.push_back({coef * factorial(a) * factorial(b) / factorial(a + b + 1), a + b + 1, x.rate});
        continue;
      }
      // partial fractions of a! b! / ((s - alpha)^{a+1} (s - beta)^{b+1})
      const cd alpha = x.rate, beta = y.rate, delta = alpha - beta;
      const double ab = factorial(a) * factorial(b);
      for (int j = 1; j <= a + 1; ++j) {
        const int n = a + 1 - j;
        const double sign = (n % 2) ? -1.0 : 1.0;
        const cd A = sign * binomial(n + b, b) / std::pow(delta, b + 1 + n);
        out.terms.push_back({coef * ab * A / factorial(j - 1), j - 1, alpha});
      }
      for (int j = 1; j <= b + 1; ++j) {
        const int n = b + 1 - j;
        const double sign = (n % 2) ? -1.0 : 1.0;
        const cd B = sign * binomial(n + a, a) / std::pow(-delta, a + 1 + n);
        out.terms.push_back({coef * ab * B / factorial(j - 1), j - 1, beta});
      }
    }
  }
  return simplify(out);
}

ExpPolyMix erlang_density(int order, double rate) {
  if (order < 1 || !(rate > 0.0)) throw Error(ErrorCode::InvalidArgument, "Erlang order >= 1 and rate > 0 required");
  ExpPolyMix out;
  out.terms.push_back({std::pow(rate, order) / factorial(order - 1), order - 1, -rate});
  return out;
}

ExpPolyMix erlang_tail(int order, double rate) {
  if (order < 1 || !(rate > 0.0)) throw Error(ErrorCode::InvalidArgument, "Erlang order >= 1 and rate > 0 required");
  ExpPolyMix out;
  for (int k = 0; k < order; ++k) out.terms.push_back({std::pow(rate, k) / factorial(k), k, -rate});
  return out;
}

}  // namespace depq
