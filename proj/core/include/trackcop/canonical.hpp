#pragma once

#include <optional>
#include <string>
#include <utility>

#include "trackcop/pl_function.hpp"
#include "trackcop/tolerances.hpp"
#include "trackcop/track.hpp"

namespace trackcop {

struct QuadrupletViolation {
  std::string function;  // "psi", "chi", "eta" or "xi"
  double where = 0.0;    // knot at which the function first decreases
  double drop = 0.0;     // size of the decrease
};

/// A proposed psi for a given diagonal together with its canonical
/// companions. psi and xi are functions of x; chi and eta of y.
///
///   eta(y) = delta(phi^-1(y)) - psi(phi^-1(y))
///   chi(y) = y - eta(y)
///   xi(x)  = x - psi(x)
///
/// The candidate is eligible when all four functions are increasing.
struct PsiCandidate {
  DiagonalSpec spec;
  PLFunction psi;
  PLFunction chi;
  PLFunction eta;
  PLFunction xi;
  bool eligible = false;
  std::optional<QuadrupletViolation> violation;
};

/// Throws PsiNotAnchored when |psi(0)| > 1e-12.
PsiCandidate quadruplet(const DiagonalSpec& spec, const PLFunction& psi, double tol = kUserSlack);

struct VariationEligibility {
  bool eligible = false;
  std::optional<std::pair<double, double>> witness;
};

/// Checks V-_{x,y}(phi - delta) <= psi(y) - psi(x) <= (y - x) - V+_{x,y}(zeta)
/// for every pair of knots x <= y. Throws PsiNotAnchored like quadruplet.
VariationEligibility eligibility_by_variation(const DiagonalSpec& spec, const PLFunction& psi,
                                              double tol = kUserSlack);

struct PsiBounds {
  PLFunction lower;
  PLFunction upper;
};

/// lower(x) = V-_{0,x}(phi - delta), upper(x) = x - V+_{0,x}(zeta). These are
/// the pointwise least and greatest eligible psi. Throws NoCopulaExists when
/// the existence check fails.
PsiBounds psi_bounds(const DiagonalSpec& spec, double tol = kUserSlack);

/// Convex combination (1 - t) a + t b of two eligible candidates for the same
/// diagonal. Throws SpecMismatch, or IneligiblePsi if an input is ineligible.
PsiCandidate blend(const PsiCandidate& a, const PsiCandidate& b, double t, double tol = kUserSlack);

}  // namespace trackcop
