#pragma once

#include "depq/inversion.hpp"
#include "depq/polynomial.hpp"
#include "depq/roots.hpp"

namespace depq {

/// Zeros of g (tilde sets) and of g - f, split by half-plane, for E exp(-sY) = f/g.
struct FactorizationResult {
  RootSet s_minus;       ///< zeros of g - f, Re < 0
  RootSet s_plus;        ///< zeros of g - f, Re >= 0, including 0
  RootSet stilde_minus;  ///< zeros of g, Re < 0
  RootSet stilde_plus;   ///< zeros of g, Re >= 0
  double atom = 1.0;     ///< P(W = 0)
};

struct FactorizeOptions {
  RootFinderOptions roots;
  double axis_eps = 1e-9;
};

/// Throws StabilityViolation when E Y >= 0 and RoucheCountMismatch when the root
/// counts disagree or a root other than 0 sits on the imaginary axis.
FactorizationResult factorize(const CRational& y_lst, const FactorizeOptions& options = {});

/// Count and atom checks; factorize calls this on its result.
void validate_factorization(const FactorizationResult& fr);

/// E exp(-sW) in factored form: gain = atom, zeros = stilde_minus, poles = s_minus.
FactoredRational waiting_factored(const FactorizationResult& fr);
CRational waiting_lst(const FactorizationResult& fr);

struct IdleTransform {
  CRational lst;  ///< E exp(sI), Re s <= 0
  double mean_idle;
};

IdleTransform idle_lst(const FactorizationResult& fr);

}  // namespace depq
