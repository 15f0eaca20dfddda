#pragma once

#include <complex>

#include "depq/expoly.hpp"
#include "depq/polynomial.hpp"
#include "depq/roots.hpp"

namespace depq {

struct DependenceModel;

/// gain * prod (s - z)^m / prod (s - p)^m
struct FactoredRational {
  std::complex<double> gain = 1.0;
  RootSet zeros;
  RootSet poles;

  std::complex<double> operator()(std::complex<double> s) const;
  int num_degree() const { return zeros.total_multiplicity(); }
  int den_degree() const { return poles.total_multiplicity(); }
  CRational expand() const;
};

/// Roots of numerator and denominator; zero/pole pairs closer than the cluster radius cancel.
FactoredRational factor(const CRational& r, const RootFinderOptions& options = {});

/// Remove zero/pole pairs within radius * (1 + |pole|).
void cancel_common(FactoredRational& r, double radius = 1e-7);

/// Law of X from its LST: atom0 = P(X = 0), terms = density of the continuous part.
/// Throws PoleOnAxis for a pole with Re >= 0 and InvalidArgument for an improper LST.
ExpPolyMix invert_density(const FactoredRational& lst);
ExpPolyMix invert_density(const CRational& lst);

/// Tail P(X > u) from the LST; atom0 = P(X = 0).
ExpPolyMix invert_tail(const FactoredRational& lst);
ExpPolyMix invert_tail(const CRational& lst);

/// E exp(-sX) recomputed from a tail representation: 1 - s * L[tail](s).
std::complex<double> lst_from_tail(const ExpPolyMix& tail, std::complex<double> s);

/// E (D - t)_+ for D = A - B/c, exact, mixed-Erlang models with finite-support mixing only.
double difference_stop_loss(const DependenceModel& m, double t);

/// E D = EA - EB/c.
double difference_mean(const DependenceModel& m);

}  // namespace depq
