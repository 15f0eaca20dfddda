#include "depq/roots.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace depq {

namespace {

using LComplex = std::complex<long double>;
using LCoeffs = std::vector<LComplex>;

constexpr long double kDataEps = DBL_EPSILON;

struct HornerResult {
  LComplex value;
  LComplex deriv;
  long double bound;  // sum |a_k| |z|^k
};

HornerResult horner(const LCoeffs& a, LComplex z) {
  LComplex p = a.back(), dp = 0;
  long double b = std::abs(a.back());
  const long double az = std::abs(z);
  for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + a[k];
    b = b * az + std::abs(a[k]);
  }
  return {p, dp, b};
}

std::vector<LComplex> companion_seeds(const LCoeffs& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  std::vector<LComplex> z(n);
  if (n == 1) {
    z[0] = -monic[0];
    return z;
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -std::complex<double>(monic[i]);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, false);
  bool ok = es.info() == Eigen::Success && es.eigenvalues().allFinite();
  if (ok) {
    for (int i = 0; i < n; ++i) z[i] = LComplex(es.eigenvalues()[i]);
  }
  // Perturb coincident seeds so the Aberth correction is defined.
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(monic[i]));
  radius = 1 + radius;
  for (int i = 0; i < n; ++i) {
    const long double angle = 2.0L * 3.14159265358979323846L * (i + 0.25L) / n + 0.4L;
    const LComplex jitter = std::polar(1e-6L * radius, angle);
    if (!ok) z[i] = std::polar(radius * 0.5L, angle);
    z[i] += jitter;
  }
  return z;
}

// Taylor coefficients d_0..d_m of the monic polynomial at c, together with the
// rounding bounds sum_k |a_k| C(k,j) |c|^{k-j}.
void taylor_with_bounds(const LCoeffs& a, LComplex c, int m, std::vector<LComplex>& d,
                        std::vector<long double>& bound) {
  const int n = static_cast<int>(a.size()) - 1;
  const long double ac = std::abs(c);
  d.assign(m + 1, 0);
  bound.assign(m + 1, 0);
  for (int j = 0; j <= std::min(m, n); ++j) {
    long double binom = 1;
    LComplex cpow = 1;
    long double apow = 1;
    for (int k = j; k <= n; ++k) {
      if (k > j) {
        binom = binom * k / (k - j);
        cpow *= c;
        apow *= ac;
      }
      d[j] += a[k] * binom * cpow;
      bound[j] += std::abs(a[k]) * binom * apow;
    }
  }
}

// A cluster of m computed roots is accepted as one m-fold root when Newton's
// method on p^(m-1), started at the centroid, lands on a point where the first m
// Taylor coefficients vanish to working precision. Returns the refined center.
bool refine_multiple_root(const LCoeffs& a, LComplex centroid, int m, long double spread, LComplex& center) {
  const int n = static_cast<int>(a.size()) - 1;
  const long double gamma = 64.0L * (n + 1) * kDataEps;
  std::vector<LComplex> d;
  std::vector<long double> bound;
  LComplex c = centroid;
  for (int iter = 0; iter < 60; ++iter) {
    taylor_with_bounds(a, c, m, d, bound);
    if (d[m] == LComplex(0)) return false;
    const LComplex step = d[m - 1] / (static_cast<long double>(m) * d[m]);
    c -= step;
    if (std::abs(step) <= 1e-3L * kDataEps * (1 + std::abs(c))) break;
  }
  if (std::abs(c - centroid) > 2 * spread + kDataEps * (1 + std::abs(c))) return false;
  taylor_with_bounds(a, c, m, d, bound);
  for (int j = 0; j < m; ++j)
    if (std::abs(d[j]) > gamma * bound[j]) return false;
  center = c;
  return true;
}

std::vector<std::vector<int>> single_linkage(const std::vector<LComplex>& z, const std::vector<int>& idx,
                                             long double radius) {
  const int n = static_cast<int>(idx.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[idx[i]] - z[idx[j]]) < radius) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(idx[i]);
  }
  return groups;
}

void cluster(const LCoeffs& a, const std::vector<LComplex>& z, const std::vector<int>& idx, long double radius,
             long double min_radius, std::vector<std::pair<LComplex, int>>& out) {
  for (const auto& g : single_linkage(z, idx, radius)) {
    if (g.size() == 1) {
      out.emplace_back(z[g[0]], 1);
      continue;
    }
    LComplex centroid = 0;
    for (int i : g) centroid += z[i];
    centroid /= static_cast<long double>(g.size());
    const int m = static_cast<int>(g.size());
    long double spread = 0;
    for (int i : g) spread = std::max(spread, std::abs(z[i] - centroid));
    LComplex center;
    if (refine_multiple_root(a, centroid, m, spread, center)) {
      out.emplace_back(center, m);
      continue;
    }
    if (radius <= min_radius) {
      out.emplace_back(centroid, m);
      continue;
    }
    cluster(a, z, g, radius * 0.5L, min_radius, out);
  }
}

void conjugate_symmetrize(std::vector<Root>& roots, double radius) {
  std::vector<bool> used(roots.size(), false);
  for (auto& r : roots)
    if (std::abs(r.location.imag()) <= radius) r.location = {r.location.real(), 0.0};
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].location.imag() <= 0) continue;
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (used[j] || roots[j].location.imag() >= 0 || roots[j].multiplicity != roots[i].multiplicity) continue;
      const double d = std::abs(roots[j].location - std::conj(roots[i].location));
      if (d < best_d) best_d = d, best = static_cast<int>(j);
    }
    if (best < 0) continue;
    const std::complex<double> mid = 0.5 * (roots[i].location + std::conj(roots[best].location));
    roots[i].location = mid;
    roots[best].location = std::conj(mid);
    used[i] = used[best] = true;
  }
}

}  // namespace

std::complex<double> RootSet::product() const {
  std::complex<double> p = 1.0;
  for (const auto& r : roots) p *= std::pow(r.location, r.multiplicity);
  return p;
}

double RootSet::max_abs() const {
  double m = 0.0;
  for (const auto& r : roots) m = std::max(m, std::abs(r.location));
  return m;
}

RootSet find_roots(const CPoly& p, const RootFinderOptions& options) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "find_roots requires degree >= 1");
  if (!p.coeffs().allFinite()) throw Error(ErrorCode::InvalidArgument, "find_roots: non-finite coefficient");

  int zeros = 0;
  while (p[zeros] == 0.0) ++zeros;
  const int m = n - zeros;

  LCoeffs a(m + 1);
  const LComplex lead(p.leading());
  for (int k = 0; k <= m; ++k) a[k] = LComplex(p[k + zeros]) / lead;
  a[m] = 1;

  std::vector<std::pair<LComplex, int>> clustered;
  if (m > 0) {
    std::vector<LComplex> z = companion_seeds(a);
    std::vector<bool> done(m, false);
    const long double tol = 4.0L * (m + 1) * kDataEps;
    bool all = false;
    for (int iter = 0; iter < options.max_iterations && !all; ++iter) {
      all = true;
      for (int i = 0; i < m; ++i) {
        if (done[i]) continue;
        const HornerResult h = horner(a, z[i]);
        if (std::abs(h.value) <= tol * h.bound) {
          done[i] = true;
          continue;
        }
        all = false;
        LComplex sum = 0;
        for (int j = 0; j < m; ++j)
          if (j != i) sum += 1.0L / (z[i] - z[j]);
        LComplex step;
        if (h.deriv == LComplex(0)) {
          step = std::polar(1e-8L * (1 + std::abs(z[i])), 0.7L * (i + 1));
        } else {
          const LComplex ratio = h.value / h.deriv;
          step = ratio / (1.0L - ratio * sum);
        }
        z[i] -= step;
      }
    }
    if (!all)
      throw Error(ErrorCode::NonConvergence,
                  "find_roots: Aberth iteration did not converge for degree " + std::to_string(n));

    long double scale = 0;
    for (const auto& zi : z) scale = std::max(scale, std::abs(zi));
    const long double min_radius = options.cluster_radius * (1 + scale);
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    cluster(a, z, idx, 0.5L * (1 + scale), min_radius, clustered);
  }

  RootSet result;
  if (zeros > 0) result.roots.push_back({0.0, zeros});
  for (const auto& [loc, mult] : clustered) result.roots.push_back({std::complex<double>(loc), mult});

  bool real_input = true;
  for (int k = 0; k <= n; ++k) real_input = real_input && p[k].imag() == 0.0;
  if (real_input) conjugate_symmetrize(result.roots, options.cluster_radius * (1 + result.max_abs()));

  std::sort(result.roots.begin(), result.roots.end(), [](const Root& x, const Root& y) {
    if (x.location.real() != y.location.real()) return x.location.real() < y.location.real();
    return x.location.imag() < y.location.imag();
  });

  for (const auto& r : result.roots) {
    const HornerResult h = horner(a, LComplex(r.location));
    const double rel = h.bound > 0 ? static_cast<double>(std::abs(h.value) / h.bound) : 0.0;
    if (r.location != 0.0 || zeros == 0) result.residual_bound = std::max(result.residual_bound, rel);
  }
  return result;
}

HalfPlaneSplit classify_halfplane(const RootSet& roots, double axis_eps) {
  HalfPlaneSplit split;
  for (const auto& r : roots.roots) {
    if (r.location.real() < -axis_eps)
      split.minus.roots.push_back(r);
    else if (r.location.real() > axis_eps)
      split.plus.roots.push_back(r);
    else
      split.axis.roots.push_back(r);
  }
  split.minus.residual_bound = split.plus.residual_bound = split.axis.residual_bound = roots.residual_bound;
  return split;
}

CPoly poly_from_roots(const RootSet& roots, std::complex<double> lead) {
  CPoly p = CPoly::constant(lead);
  for (const auto& r : roots.roots)
    for (int k = 0; k < r.multiplicity; ++k) p = p * CPoly::linear_factor(r.location);
  return p;
}

}  // namespace depq
