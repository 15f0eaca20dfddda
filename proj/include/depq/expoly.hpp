#pragma once

#include <complex>
#include <vector>

namespace depq {

/// coef * u^power * exp(rate * u)
struct ExpTerm {
  std::complex<double> coef;
  int power = 0;
  std::complex<double> rate;
};

/// A point mass at zero plus a finite exponential-polynomial function on u >= 0.
///
/// The same carrier is used for densities (atom0 = mass at 0, terms = density of the
/// continuous part), for tails (atom0 = P(X = 0), terms = P(X > u)) and for plain
/// functions (atom0 = 0). Terms are kept closed under conjugation so evaluations are
/// real; `operator()` returns the real part of the term sum and ignores atom0.
struct ExpPolyMix {
  double atom0 = 0.0;
  std::vector<ExpTerm> terms;

  double operator()(double u) const;
  std::complex<double> value(std::complex<double> u) const;
  /// d/du of the term sum.
  double derivative(double u) const;
  /// Laplace transform of the term sum, int_0^inf e^{-su} f(u) du, for Re s > max Re rate.
  std::complex<double> laplace(std::complex<double> s) const;
  /// Largest real part among the rates (-inf for no terms).
  double abscissa() const;
};

/// Relative tolerance under which two rates are treated as identical.
inline constexpr double kRateMergeTolerance = 1e-7;

/// Merge terms sharing (power, rate) up to kRateMergeTolerance and drop exact zeros.
ExpPolyMix simplify(const ExpPolyMix& f);

ExpPolyMix operator+(const ExpPolyMix& a, const ExpPolyMix& b);
ExpPolyMix operator*(double k, const ExpPolyMix& a);

/// g(u) = f(u / c), atom unchanged.
ExpPolyMix dilate(const ExpPolyMix& f, double c);

/// g(t) = int_t^inf f(u) du (terms only; atom0 carried over unchanged).
ExpPolyMix integrate_tail(const ExpPolyMix& f);
/// int_0^inf f(u) du.
double integral(const ExpPolyMix& f);

/// For a tail representation: E X = int_0^inf P(X > u) du.
double mean(const ExpPolyMix& tail);
/// For a tail representation: E (X - t)_+ = int_t^inf P(X > u) du.
double stop_loss(const ExpPolyMix& tail, double t);

/// Smallest q with tail(q) <= 1 - p, by bracketing and bisection to 1e-10 absolute.
/// Returns 0 when the atom at zero already carries probability >= p.
double quantile(const ExpPolyMix& tail, double p);

/// Convolution of two measures on [0, inf) given as atom + density.
ExpPolyMix convolve(const ExpPolyMix& f, const ExpPolyMix& g);

/// Density of Erlang(order, rate).
ExpPolyMix erlang_density(int order, double rate);
/// P(Erlang(order, rate) > u).
ExpPolyMix erlang_tail(int order, double rate);

}  // namespace depq
