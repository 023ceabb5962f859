#pragma once

#include <span>
#include <vector>

#include "trackcop/canonical.hpp"
#include "trackcop/grid.hpp"

namespace trackcop {

/// Which piece of the case formula is active at a point.
///   lower_m: y <= g(x), value y
///   kappa:   g(x) <= y <= h(x), value psi(x) - psi(phi^-1(y)) + delta(phi^-1(y))
///   upper_m: y >= h(x), value x
enum class Branch { lower_m, kappa, upper_m };

struct StSplit {
  double s = 0.0;  // min(psi(x), chi(y)): mass below the track
  double t = 0.0;  // min(xi(x), eta(y)): mass above the track
};

struct RegionFunctions {
  PLFunction g;
  PLFunction h;
};

/// The copula C_psi(x, y) = min{x, y, psi(x) - psi(phi^-1(y)) + delta(phi^-1(y))}
/// of an eligible candidate, together with the band g(x) <= y <= h(x) outside
/// of which it coincides with M(x, y) = min(x, y).
///
/// The band is the tightest one that contains the track:
///   g(x) = min(phi(x), max{y : chi(y) <= psi(x)}),
///   h(x) = max(phi(x), min{y : eta(y) >= xi(x)}).
/// Outside the band the value is returned as min(x, y) without arithmetic.
class CopulaCpsi {
 public:
  /// Throws IneligiblePsi.
  explicit CopulaCpsi(PsiCandidate candidate);

  const DiagonalSpec& spec() const noexcept { return candidate_.spec; }
  const PsiCandidate& candidate() const noexcept { return candidate_; }

  double operator()(double x, double y) const;
  double kappa(double x, double y) const;
  StSplit split(double x, double y) const;
  Branch branch(double x, double y) const;

  double lower_boundary(double x) const;
  double upper_boundary(double x) const;
  /// max{y : eta(y) <= xi(x)}, the literal max-form of the upper boundary.
  double upper_boundary_max_form(double x) const;

 private:
  friend GridCopula materialize_grid(const CopulaCpsi&, std::span<const double>);
  double value_in_row(double x, double y, double g, double h) const;

  PsiCandidate candidate_;
};

RegionFunctions region_functions(const CopulaCpsi& copula);

/// Throws BadMesh.
GridCopula materialize_grid(const CopulaCpsi& copula, std::span<const double> mesh);

struct RegionDiscrepancy {
  double x = 0.0;
  double tight = 0.0;     // upper_boundary(x)
  double max_form = 0.0;  // upper_boundary_max_form(x)
};

/// Knots at which the tight upper boundary and the max-form differ by more
/// than tol. They differ exactly where eta is flat at level xi(x).
std::vector<RegionDiscrepancy> region_form_discrepancies(const CopulaCpsi& copula,
                                                         double tol = kUserSlack);

const char* to_string(Branch b) noexcept;

}  // namespace trackcop
