#pragma once

#include <complex>
#include <vector>

#include "depq/polynomial.hpp"

namespace depq {

struct Root {
  std::complex<double> location;
  int multiplicity = 1;
};

/// Roots of a polynomial with multiplicities.
struct RootSet {
  std::vector<Root> roots;
  /// Largest scaled residual |p(z)| / sum_k |a_k||z|^k over the returned roots.
  double residual_bound = 0.0;

  int total_multiplicity() const {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
  }
  bool empty() const { return roots.empty(); }
  /// Product of root^multiplicity.
  std::complex<double> product() const;
  /// Largest root modulus, 0 for an empty set.
  double max_abs() const;
};

struct RootFinderOptions {
  /// Roots closer than cluster_radius * (1 + max|root|) are merged unconditionally.
  double cluster_radius = 1e-7;
  int max_iterations = 2000;
};

/// All complex roots of `p` (degree >= 1) by Aberth-Ehrlich simultaneous iteration in
/// extended precision, seeded with companion-matrix eigenvalues.
///
/// Near-coincident roots are grouped hierarchically: a candidate cluster of m roots is
/// accepted as a single m-fold root when Newton on p^(m-1) from the centroid reaches a
/// point where the first m Taylor coefficients vanish at working precision. Clusters tighter than the
/// cluster radius are always merged. For real-coefficient input the result is made
/// exactly closed under conjugation. Throws NonConvergence when the iteration budget is
/// exhausted.
RootSet find_roots(const CPoly& p, const RootFinderOptions& options = {});

struct HalfPlaneSplit {
  RootSet minus;  ///< Re < -axis_eps
  RootSet plus;   ///< Re > +axis_eps
  RootSet axis;   ///< |Re| <= axis_eps
};

HalfPlaneSplit classify_halfplane(const RootSet& roots, double axis_eps = 1e-9);

/// lead * prod (s - r)^m
CPoly poly_from_roots(const RootSet& roots, std::complex<double> lead = 1.0);

}  // namespace depq
