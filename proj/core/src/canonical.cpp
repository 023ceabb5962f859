#include "trackcop/canonical.hpp"

#include <cmath>
#include <sstream>

#include "trackcop/errors.hpp"

namespace trackcop {

namespace {

void require_anchored(const PLFunction& psi) {
  const double at_zero = psi.ys().front();
  if (std::abs(at_zero) > kIdentityTol) {
    std::ostringstream os;
    os << "psi(0) = " << at_zero << " but must vanish";
    throw Error(ErrorCode::PsiNotAnchored, os.str());
  }
}

std::optional<QuadrupletViolation> check_increasing(const char* name, const PLFunction& f,
                                                    double tol) {
  if (auto k = first_decrease(f, tol)) {
    return QuadrupletViolation{name, f.xs()[*k], f.ys()[*k - 1] - f.ys()[*k]};
  }
  return std::nullopt;
}

}  // namespace

PsiCandidate quadruplet(const DiagonalSpec& spec, const PLFunction& psi, double tol) {
  require_anchored(psi);
  const auto& track = spec.track();

  auto full_psi = psi.refined(spec.knots());
  auto xi = PLFunction::identity() - full_psi;
  auto eta = track.pull_to_y(spec.delta() - full_psi);
  auto chi = PLFunction::identity() - eta;

  PsiCandidate c{spec, std::move(full_psi), std::move(chi), std::move(eta), std::move(xi), false,
                 std::nullopt};
  if (!c.violation) c.violation = check_increasing("psi", c.psi, tol);
  if (!c.violation) c.violation = check_increasing("chi", c.chi, tol);
  if (!c.violation) c.violation = check_increasing("eta", c.eta, tol);
  if (!c.violation) c.violation = check_increasing("xi", c.xi, tol);
  c.eligible = !c.violation.has_value();
  return c;
}

VariationEligibility eligibility_by_variation(const DiagonalSpec& spec, const PLFunction& psi,
                                              double tol) {
  require_anchored(psi);
  const auto knots = merge_knots(psi.xs(), spec.knots());
  const auto lower_run = negative_variation_majorant(spec.delta_tilde());
  const auto upper_run = positive_variation_majorant(spec.zeta());

  // Using V_{x,y} = V_{0,y} - V_{0,x}, the double inequality over all pairs
  // says that psi - V-_{0,.}(delta_tilde) and (. - V+_{0,.}(zeta)) - psi never
  // drop between two knots.
  std::vector<double> above_lower;
  std::vector<double> below_upper;
  above_lower.reserve(knots.size());
  below_upper.reserve(knots.size());
  for (double t : knots) {
    const double p = psi(t);
    above_lower.push_back(p - lower_run(t));
    below_upper.push_back(t - upper_run(t) - p);
  }

  auto lo = find_drop(above_lower, tol);
  auto hi = find_drop(below_upper, tol);
  VariationEligibility result;
  result.eligible = !lo && !hi;
  if (lo && (!hi || lo->second <= hi->second)) {
    result.witness = std::pair{knots[lo->first], knots[lo->second]};
  } else if (hi) {
    result.witness = std::pair{knots[hi->first], knots[hi->second]};
  }
  return result;
}

PsiBounds psi_bounds(const DiagonalSpec& spec, double tol) {
  const auto existence = existence_check(spec, tol);
  if (!existence.exists) {
    std::ostringstream os;
    os << "variational existence bound fails";
    if (existence.witness) {
      os << " on [" << existence.witness->first << ", " << existence.witness->second << "]";
    }
    throw Error(ErrorCode::NoCopulaExists, os.str());
  }
  const auto& knots = spec.knots();
  auto lower = negative_variation_majorant(spec.delta_tilde()).refined(knots);
  auto upper = (PLFunction::identity() - positive_variation_majorant(spec.zeta())).refined(knots);
  return {std::move(lower), std::move(upper)};
}

PsiCandidate blend(const PsiCandidate& a, const PsiCandidate& b, double t, double tol) {
  if (!(a.spec == b.spec)) throw Error(ErrorCode::SpecMismatch, "blend of candidates for different diagonals");
  if (!a.eligible || !b.eligible) throw Error(ErrorCode::IneligiblePsi, "blend requires eligible candidates");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::OutOfDomain, "blend weight outside [0,1]");
  if (t == 0.0) return quadruplet(a.spec, a.psi, tol);
  if (t == 1.0) return quadruplet(a.spec, b.psi, tol);
  return quadruplet(a.spec, scale(a.psi, 1.0 - t) + scale(b.psi, t), tol);
}

}  // namespace trackcop
