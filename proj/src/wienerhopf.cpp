#include "depq/wienerhopf.hpp"

#include <cmath>
#include <sstream>

#include "depq/errors.hpp"

namespace depq {

namespace {

using cd = std::complex<double>;

std::string describe(const RootSet& r) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < r.roots.size(); ++i) {
    if (i) os << ", ";
    os << r.roots[i].location.real() << (r.roots[i].location.imag() < 0 ? "" : "+") << r.roots[i].location.imag()
       << "i";
    if (r.roots[i].multiplicity > 1) os << " x" << r.roots[i].multiplicity;
  }
  os << "}";
  return os.str();
}

/// Pair roots of a and b closer than radius * (1 + |root|) and strip the common multiplicity.
void cancel_shared(RootSet& a, RootSet& b, double radius) {
  for (auto& x : a.roots)
    for (auto& y : b.roots) {
      if (x.multiplicity == 0 || y.multiplicity == 0) continue;
      if (std::abs(x.location - y.location) >= radius * (1.0 + std::abs(y.location))) continue;
      const int k = std::min(x.multiplicity, y.multiplicity);
      x.multiplicity -= k;
      y.multiplicity -= k;
    }
  std::erase_if(a.roots, [](const Root& r) { return r.multiplicity == 0; });
  std::erase_if(b.roots, [](const Root& r) { return r.multiplicity == 0; });
}

int zero_multiplicity(const RootSet& r) {
  int m = 0;
  for (const auto& x : r.roots)
    if (x.location == cd(0.0)) m += x.multiplicity;
  return m;
}

}  // namespace

FactorizationResult factorize(const CRational& y_lst, const FactorizeOptions& options) {
  const CPoly& f = y_lst.num();
  const CPoly& g = y_lst.den();
  // deg f = deg g only for an atom of Y at 0, which must carry mass < 1
  if (f.degree() > g.degree() || (f.degree() == g.degree() && std::abs(f.leading() - g.leading()) <=
                                                                   1e-12 * std::abs(g.leading())))
    throw Error(ErrorCode::InvalidArgument, "factorize: need deg f < deg g");
  const cd f0 = f[0], g0 = g[0];
  if (std::abs(f0 - g0) > 1e-10 * std::abs(g0))
    throw Error(ErrorCode::InvalidArgument, "factorize: transform is not 1 at s = 0");

  // E Y = -(f/g)'(0)
  const double ey = -((f[1] * g0 - f0 * g[1]) / (g0 * g0)).real();
  const double scale = std::abs(f[1] / f0) + std::abs(g[1] / g0);
  if (!(ey < -1e-12 * scale))
    throw Error(ErrorCode::StabilityViolation, "stability violated: E(B/c - A) = " + std::to_string(ey) + " >= 0");

  CPoly::Coeffs hc = (g - f).coeffs();
  hc[0] = 0.0;  // g(0) = f(0): the root at 0 is exact
  const CPoly h(hc);

  const RootSet gr = find_roots(g, options.roots);
  const RootSet hr = find_roots(h, options.roots);
  HalfPlaneSplit gs = classify_halfplane(gr, options.axis_eps);
  HalfPlaneSplit hs = classify_halfplane(hr, options.axis_eps);

  if (!gs.axis.empty())
    throw Error(ErrorCode::RoucheCountMismatch, "factorize: pole of the Y-transform on the axis " + describe(gs.axis));
  if (zero_multiplicity(hs.axis) != 1 || hs.axis.total_multiplicity() != 1)
    throw Error(ErrorCode::RoucheCountMismatch,
                "factorize: expected a single zero of g - f on the axis at 0, found " + describe(hs.axis));

  const double radius = options.roots.cluster_radius;
  cancel_shared(hs.minus, gs.minus, radius);
  cancel_shared(hs.plus, gs.plus, radius);

  FactorizationResult fr;
  fr.s_minus = hs.minus;
  fr.s_plus = hs.plus;
  fr.s_plus.roots.push_back({0.0, 1});
  fr.stilde_minus = gs.minus;
  fr.stilde_plus = gs.plus;

  // atom = prod s^- / prod stilde^-, accumulated as interleaved ratios
  std::vector<cd> num, den;
  for (const auto& r : fr.s_minus.roots)
    for (int k = 0; k < r.multiplicity; ++k) num.push_back(r.location);
  for (const auto& r : fr.stilde_minus.roots)
    for (int k = 0; k < r.multiplicity; ++k) den.push_back(r.location);
  cd atom = 1.0;
  for (std::size_t k = 0; k < std::max(num.size(), den.size()); ++k) {
    if (k < num.size()) atom *= num[k];
    if (k < den.size()) atom /= den[k];
  }
  fr.atom = atom.real();
  if (std::abs(atom.imag()) > 1e-9 * std::abs(atom) || num.size() != den.size()) fr.atom = -1.0;
  validate_factorization(fr);
  return fr;
}

void validate_factorization(const FactorizationResult& fr) {
  const int np = fr.s_plus.total_multiplicity(), ntp = fr.stilde_plus.total_multiplicity();
  const int nm = fr.s_minus.total_multiplicity(), ntm = fr.stilde_minus.total_multiplicity();
  if (np != ntp)
    throw Error(ErrorCode::RoucheCountMismatch, "Rouche count mismatch: " + std::to_string(np) +
                                                    " zeros of g - f with Re >= 0 " + describe(fr.s_plus) + " vs " +
                                                    std::to_string(ntp) + " zeros of g " + describe(fr.stilde_plus));
  if (nm != ntm)
    throw Error(ErrorCode::RoucheCountMismatch, "Rouche count mismatch: " + std::to_string(nm) +
                                                    " zeros of g - f with Re < 0 " + describe(fr.s_minus) + " vs " +
                                                    std::to_string(ntm) + " zeros of g " + describe(fr.stilde_minus));
  if (zero_multiplicity(fr.s_plus) != 1)
    throw Error(ErrorCode::RoucheCountMismatch, "zero of g - f at 0 is not simple: " + describe(fr.s_plus));
  if (!(fr.atom > 0.0 && fr.atom <= 1.0 + 1e-12))
    throw Error(ErrorCode::RoucheCountMismatch, "atom at zero outside (0, 1]: " + std::to_string(fr.atom));
}

FactoredRational waiting_factored(const FactorizationResult& fr) {
  FactoredRational w;
  w.gain = std::min(fr.atom, 1.0);
  w.zeros = fr.stilde_minus;
  w.poles = fr.s_minus;
  cancel_common(w);
  return w;
}

CRational waiting_lst(const FactorizationResult& fr) { return waiting_factored(fr).expand(); }

IdleTransform idle_lst(const FactorizationResult& fr) {
  const CPoly p = poly_from_roots(fr.s_plus);
  const CPoly q = poly_from_roots(fr.stilde_plus);
  cd mean = -1.0;
  for (const auto& r : fr.s_plus.roots)
    if (r.location != cd(0.0)) mean *= std::pow(-r.location, r.multiplicity);
  for (const auto& r : fr.stilde_plus.roots) mean /= std::pow(-r.location, r.multiplicity);
  return {CRational(q - p, q), mean.real()};
}

}  // namespace depq
