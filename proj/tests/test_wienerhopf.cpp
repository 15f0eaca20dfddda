#include <doctest.h>

#include <cmath>

#include "depq/errors.hpp"
#include "depq/models.hpp"
#include "depq/queuerisk.hpp"
#include "depq/wienerhopf.hpp"

using namespace depq;
using cd = std::complex<double>;

namespace {

DependenceModel mm1() { return build_scenario(ScenarioKind::Independent, {1.0}, 1.0, 2.0); }

bool has_root(const RootSet& r, cd z, int mult) {
  for (const auto& x : r.roots)
    if (std::abs(x.location - z) < 1e-10 && x.multiplicity == mult) return true;
  return false;
}

}  // namespace

TEST_CASE("factorization of the M/M/1 transform") {
  const auto fr = factorize(y_transform(mm1()));
  CHECK(fr.s_minus.total_multiplicity() == 1);
  CHECK(has_root(fr.s_minus, -1.0, 1));
  CHECK(fr.s_plus.total_multiplicity() == 1);
  CHECK(has_root(fr.s_plus, 0.0, 1));
  CHECK(has_root(fr.stilde_minus, -2.0, 1));
  CHECK(has_root(fr.stilde_plus, 1.0, 1));
  CHECK(std::abs(fr.atom - 0.5) < 1e-14);
}

TEST_CASE("waiting and idle transforms of the M/M/1 queue") {
  const auto fr = factorize(y_transform(mm1()));
  const CRational w = waiting_lst(fr);
  for (cd s : {cd(0.0), cd(0.7), cd(2.0, -1.0)}) CHECK(std::abs(w(s) - (1.0 + s / 2.0) / (1.0 + s)) < 1e-14);
  CHECK(std::abs(w.limit_at_infinity() - 0.5) < 1e-14);

  const IdleTransform idle = idle_lst(fr);
  for (cd s : {cd(0.0), cd(-0.7), cd(-2.0, 1.0)}) CHECK(std::abs(idle.lst(s) - 1.0 / (1.0 - s)) < 1e-14);
  CHECK(idle.mean_idle == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Kibble-Moran order-2 pole appears with multiplicity 2") {
  const auto fr = factorize(y_transform(DependenceModel::kibble_moran(2, 0.5, 1.0, 2.0)));
  bool double_root = false;
  for (const auto& r : fr.stilde_minus.roots) double_root = double_root || r.multiplicity == 2;
  CHECK(double_root);
  CHECK(fr.stilde_plus.total_multiplicity() == 2);
}

TEST_CASE("count identity and transform normalization over the sweep") {
  const auto sweep = verify_sweep();
  CHECK(sweep.size() >= 30);
  for (const auto& e : sweep) {
    CAPTURE(e.label);
    const auto fr = factorize(y_transform(e.model));
    CHECK(fr.s_plus.total_multiplicity() == fr.stilde_plus.total_multiplicity());
    CHECK(fr.s_minus.total_multiplicity() == fr.stilde_minus.total_multiplicity());
    int zero = 0;
    for (const auto& r : fr.s_plus.roots)
      if (r.location == cd(0.0)) zero += r.multiplicity;
    CHECK(zero == 1);
    CHECK(fr.atom > 0.0);
    CHECK(fr.atom <= 1.0);

    const CRational w = waiting_lst(fr);
    CHECK(std::abs(w(cd(0.0)) - 1.0) < 1e-10);
    CHECK(std::abs(w.limit_at_infinity() - fr.atom) < 1e-10);

    const IdleTransform idle = idle_lst(fr);
    CHECK(std::abs(idle.lst(cd(0.0)) - 1.0) < 1e-10);
    CHECK(idle.mean_idle > 0.0);
    // idle time per cycle = (1 - rho) x cycle length = (1 - rho) E A / P(W = 0)
    const auto mom = moments(e.model);
    CHECK(idle.mean_idle == doctest::Approx((1 - mom.rho) * mom.EA / fr.atom).epsilon(1e-8));
  }
}

TEST_CASE("Poisson arrivals give atom 1 - rho") {
  for (const auto& m : {mm1(), DependenceModel::cheriyan_ramabhadran({0, 1, 3}, {1.0, 1.0, 5.0}),
                        build_scenario(ScenarioKind::Independent, {1.0}, 2.0, 3.5, 0.8)}) {
    const auto fr = factorize(y_transform(m));
    CHECK(std::abs(fr.atom - (1.0 - moments(m).rho)) < 1e-10);
  }
}

TEST_CASE("unstable models are rejected") {
  try {
    factorize(y_transform(build_scenario(ScenarioKind::Positive, uniform_weights(3), 1.0, 0.9)));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StabilityViolation);
  }
  CHECK_THROWS_AS(factorize(y_transform(build_scenario(ScenarioKind::Positive, uniform_weights(3), 1.0, 1.0))),
                  Error);
}

TEST_CASE("a flipped root sign is reported as a count mismatch") {
  auto fr = factorize(y_transform(build_scenario(ScenarioKind::Negative, uniform_weights(3), 1.0, 2.0)));
  Root moved = fr.s_minus.roots.front();
  fr.s_minus.roots.erase(fr.s_minus.roots.begin());
  moved.location = -moved.location;
  fr.s_plus.roots.push_back(moved);
  try {
    validate_factorization(fr);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RoucheCountMismatch);
  }
}
