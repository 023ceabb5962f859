#pragma once

#include <optional>
#include <utility>

#include "trackcop/construction.hpp"
#include "trackcop/grid.hpp"
#include "trackcop/pl_function.hpp"
#include "trackcop/track.hpp"

namespace trackcop {

enum class CheckMode { copula, quasi };

struct VerificationReport {
  CheckMode mode = CheckMode::copula;
  bool grounded = false;        // C(x, 0) = C(0, y) = 0
  bool margins = false;         // C(x, 1) = x, C(1, y) = y
  bool monotone = false;        // increasing along every mesh line
  bool lipschitz = false;       // 1-Lipschitz between adjacent mesh lines
  bool two_increasing = false;  // every mesh cell has volume >= -1e-12
  double min_cell_volume = 0.0;
  std::pair<double, double> worst_cell{0.0, 0.0};  // lower-left corner
  bool quasi_only_boundary_ok = false;  // rectangles touching the boundary
  double min_boundary_volume = 0.0;

  bool copula_ok() const noexcept { return grounded && margins && two_increasing; }
  bool quasi_ok() const noexcept {
    return grounded && margins && monotone && lipschitz && quasi_only_boundary_ok;
  }
  bool passed() const noexcept { return mode == CheckMode::copula ? copula_ok() : quasi_ok(); }
};

/// Runs every check; `mode` only selects which verdict passed() reports.
VerificationReport check_grid(const GridCopula& grid, CheckMode mode);

enum class Relation { equal, first_dominates, second_dominates, incomparable };

struct ComparisonResult {
  Relation relation = Relation::equal;
  /// Mirror pair (u, v), u < v, maximising |(C1 - C2)(u, v) * (C1 - C2)(v, u)|
  /// among pairs where that product is negative.
  std::optional<std::pair<double, double>> witness_pair;
  std::optional<double> product;
  double max_abs_difference = 0.0;
};

/// Throws MeshMismatch unless both grids share the same mesh.
ComparisonResult compare(const GridCopula& first, const GridCopula& second);

/// (C1(u, v) - C2(u, v)) * (C1(v, u) - C2(v, u)).
template <class F1, class F2>
double mirror_product(const F1& c1, const F2& c2, double u, double v) {
  return (c1(u, v) - c2(u, v)) * (c1(v, u) - c2(v, u));
}

/// Largest value at (x, y) over all copulas with the given track section.
/// On the identity track this is the closed form
///   min{x, y, max(x, y) - (TV(zeta) + zeta(x) + zeta(y)) / 2},
/// with the variation taken between x and y. On other tracks it is C at the
/// lower bound psi for y >= phi(x) and at the upper bound otherwise.
class PointwiseUpperBound {
 public:
  /// Throws NoCopulaExists.
  explicit PointwiseUpperBound(const DiagonalSpec& spec, double tol = kUserSlack);

  double operator()(double x, double y) const;

  const CopulaCpsi& at_lower_psi() const noexcept { return lower_; }
  const CopulaCpsi& at_upper_psi() const noexcept { return upper_; }

 private:
  explicit PointwiseUpperBound(std::pair<CopulaCpsi, CopulaCpsi> copulas);

  CopulaCpsi lower_;
  CopulaCpsi upper_;
};

double pointwise_upper_bound(const DiagonalSpec& spec, double x, double y);

/// Mass of the grid copula lying on or below the track with first coordinate
/// at most x, for each mesh point x. Each cell's volume is spread uniformly
/// over the cell and split by the exact area below the piecewise-linear track.
/// Throws NotACopula if the grid fails the copula checks.
PLFunction extract_psi(const GridCopula& grid, const Track& track);

/// The undominated copula C_psi above the grid, with psi extracted from the
/// grid. Throws TrackSectionMismatch when the grid's track section differs
/// from delta by more than 2/n, and IneligibleExtractedPsi when the
/// extracted psi is not eligible at slack tol.
CopulaCpsi dominating_envelope(const GridCopula& grid, const DiagonalSpec& spec,
                               double tol = kUserSlack);

const char* to_string(Relation r) noexcept;
const char* to_string(CheckMode m) noexcept;

}  // namespace trackcop
