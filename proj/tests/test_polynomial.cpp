#include <complex>
#include <random>

#include "doctest.h"
#include "depq/roots.hpp"

using namespace depq;
using cd = std::complex<double>;

namespace {

bool has_root(const RootSet& rs, cd z, int mult, double tol) {
  for (const auto& r : rs.roots)
    if (std::abs(r.location - z) <= tol && r.multiplicity == mult) return true;
  return false;
}

double max_rel_coeff_error(const CPoly& a, const CPoly& b) {
  const double scale = a.max_abs_coeff();
  double err = 0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) err = std::max(err, std::abs(a[k] - b[k]) / scale);
  return err;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const CPoly a{1.0, 1.0}, b{2.0, 1.0};
  const CPoly prod = a * b;
  CHECK(prod.degree() == 2);
  CHECK(prod[0] == cd(2));
  CHECK(prod[1] == cd(3));
  CHECK(prod[2] == cd(1));

  const CPoly diff = CPoly{2.0, -1.0, -1.0} - CPoly::constant(2.0);
  CHECK(diff.degree() == 2);
  CHECK(diff[0] == cd(0));
  CHECK(diff[1] == cd(-1));
  CHECK(diff[2] == cd(-1));

  const CPoly zero = scale(a, cd(0));
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);

  // equal leading terms cancel down to a lower degree
  const CPoly c = CPoly{1.0, 2.0, 3.0} - CPoly{0.5, 0.0, 3.0};
  CHECK(c.degree() == 1);
}

TEST_CASE("polynomial evaluation, composition and Taylor shift") {
  const CPoly p{1.0, -3.0, 0.0, 2.0};
  CHECK(std::abs(p(cd(2.0)) - cd(11.0)) < 1e-14);
  const CPoly q{1.0, 1.0};
  const CPoly pq = compose(p, q);  // p(1 + s)
  CHECK(std::abs(pq(cd(0.5)) - p(cd(1.5))) < 1e-13);
  const auto t = p.taylor_at(cd(2.0));
  CHECK(std::abs(t[0] - p(cd(2.0))) < 1e-13);
  CHECK(std::abs(t[1] - p.derivative()(cd(2.0))) < 1e-13);
  CHECK(std::abs(t[3] - cd(2.0)) < 1e-13);
}

TEST_CASE("rational function limit and zero-denominator guard") {
  const CRational r(CPoly{1.0, 0.5}, CPoly{1.0, 1.0});
  CHECK(std::abs(r.limit_at_infinity() - cd(0.5)) < 1e-15);
  CHECK(std::abs(r(cd(0.0)) - cd(1.0)) < 1e-15);
  CHECK_THROWS_AS(CRational(CPoly{1.0}, CPoly{}), Error);
}

TEST_CASE("find_roots on factorizable inputs") {
  SUBCASE("s^2 - 1") {
    const RootSet rs = find_roots(CPoly{-1.0, 0.0, 1.0});
    CHECK(rs.total_multiplicity() == 2);
    CHECK(has_root(rs, 1.0, 1, 1e-12));
    CHECK(has_root(rs, -1.0, 1, 1e-12));
  }
  SUBCASE("(s+2)^3") {
    const RootSet rs = find_roots(pow(CPoly{2.0, 1.0}, 3));
    REQUIRE(rs.roots.size() == 1);
    CHECK(rs.roots[0].multiplicity == 3);
    CHECK(std::abs(rs.roots[0].location + 2.0) < 1e-10);
  }
  SUBCASE("-s - s^2") {
    const RootSet rs = find_roots(CPoly{0.0, -1.0, -1.0});
    CHECK(rs.total_multiplicity() == 2);
    CHECK(has_root(rs, 0.0, 1, 0.0));
    CHECK(has_root(rs, -1.0, 1, 1e-12));
  }
  SUBCASE("degree zero is rejected") { CHECK_THROWS_AS(find_roots(CPoly{3.0}), Error); }
}

TEST_CASE("find_roots resolves high multiplicities") {
  // The shape of a mixed-Erlang denominator: (1 - s)^14 (2 + s)^14.
  const CPoly g = pow(CPoly{1.0, -1.0}, 14) * pow(CPoly{2.0, 1.0}, 14);
  const RootSet rs = find_roots(g);
  REQUIRE(rs.roots.size() == 2);
  CHECK(has_root(rs, 1.0, 14, 1e-9));
  CHECK(has_root(rs, -2.0, 14, 1e-9));

  // unequal scales: (0.05 - s)^5 (1 + s)^5
  const RootSet rs2 = find_roots(pow(CPoly{0.05, -1.0}, 5) * pow(CPoly{1.0, 1.0}, 5));
  REQUIRE(rs2.roots.size() == 2);
  CHECK(has_root(rs2, 0.05, 5, 1e-10));
  CHECK(has_root(rs2, -1.0, 5, 1e-10));
}

TEST_CASE("find_roots keeps close but distinct roots apart") {
  RootSet truth;
  truth.roots = {{-1.0, 1}, {-1.001, 1}, {cd(0.5, 0.25), 1}, {cd(0.5, -0.25), 1}};
  const RootSet rs = find_roots(poly_from_roots(truth));
  CHECK(rs.roots.size() == 4);
  for (const auto& r : truth.roots) CHECK(has_root(rs, r.location, 1, 1e-9));
}

TEST_CASE("iteration budget exhaustion surfaces NonConvergence") {
  RootFinderOptions opts;
  opts.max_iterations = 0;
  try {
    find_roots(CPoly{1.0, 2.0, 3.0, 4.0}, opts);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConvergence);
  }
}

TEST_CASE("property: reconstruction, conjugate closure and half-plane partition") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int half = 1 + trial % 20;  // degrees up to 40
    RootSet truth;
    // well-separated real-coefficient roots: conjugate pairs on a jittered grid
    for (int k = 0; k < half; ++k) {
      const double re = -3.0 + 6.0 * (k + 0.5) / half + 0.05 * unif(rng) / half;
      const double im = 0.3 + 0.1 * std::abs(unif(rng));
      if (k % 3 == 0) {
        truth.roots.push_back({cd(re, 0.0), 1});
      } else {
        truth.roots.push_back({cd(re, im), 1});
        truth.roots.push_back({cd(re, -im), 1});
      }
    }
    const cd lead(1.5, 0.0);
    CPoly p = poly_from_roots(truth, lead);
    // strip round-off imaginary parts so the input is exactly real
    CPoly::Coeffs c = p.coeffs();
    for (auto& x : c) x = cd(x.real(), 0.0);
    p = CPoly(c);

    const RootSet rs = find_roots(p);
    CHECK(rs.total_multiplicity() == p.degree());
    CHECK(max_rel_coeff_error(p, poly_from_roots(rs, lead)) <= 1e-8);

    for (const auto& r : rs.roots) {
      if (r.location.imag() == 0.0) continue;
      bool found = false;
      for (const auto& q : rs.roots) found = found || (q.location == std::conj(r.location));
      CHECK(found);
    }

    const HalfPlaneSplit split = classify_halfplane(rs, 1e-9);
    CHECK(split.minus.total_multiplicity() + split.plus.total_multiplicity() + split.axis.total_multiplicity() ==
          p.degree());
  }
}

TEST_CASE("classify_halfplane") {
  RootSet rs;
  rs.roots = {{0.0, 1}, {-1.0, 1}};
  auto split = classify_halfplane(rs, 1e-9);
  CHECK(split.minus.total_multiplicity() == 1);
  CHECK(split.axis.total_multiplicity() == 1);
  CHECK(split.plus.empty());

  rs.roots = {{-2.0, 1}, {1.0, 1}};
  split = classify_halfplane(rs);
  CHECK(split.minus.roots[0].location == cd(-2.0));
  CHECK(split.plus.roots[0].location == cd(1.0));

  rs.roots = {{cd(-0.5, 2.0), 1}, {cd(-0.5, -2.0), 1}};
  split = classify_halfplane(rs);
  CHECK(split.minus.total_multiplicity() == 2);
}
