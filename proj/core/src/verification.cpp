#include "trackcop/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "trackcop/errors.hpp"

namespace trackcop {

namespace {

constexpr double kLipschitzSlack = kUserSlack;

// min over a < b of values[b] - values[a]; +inf for fewer than two entries.
template <class Get>
double min_increment(std::size_t n, Get get) {
  double best = std::numeric_limits<double>::infinity();
  double peak = get(0);
  for (std::size_t b = 1; b < n; ++b) {
    const double v = get(b);
    best = std::min(best, v - peak);
    peak = std::max(peak, v);
  }
  return best;
}

// Integral over [u0, u1] of clamp(p(u) - lo, 0, hi - lo) for p linear from p0 to p1.
double clamped_area(double u0, double u1, double p0, double p1, double lo, double hi) {
  std::array<double, 4> cuts{u0, u1, u0, u0};
  std::size_t count = 2;
  if (p0 != p1) {
    for (double level : {lo, hi}) {
      const double u = u0 + (level - p0) / (p1 - p0) * (u1 - u0);
      if (u > u0 && u < u1) cuts[count++] = u;
    }
  }
  std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(count));
  auto height = [&](double u) {
    const double p = p0 + (u - u0) / (u1 - u0) * (p1 - p0);
    return std::clamp(p - lo, 0.0, hi - lo);
  };
  double area = 0.0;
  for (std::size_t k = 1; k < count; ++k) {
    area += 0.5 * (height(cuts[k - 1]) + height(cuts[k])) * (cuts[k] - cuts[k - 1]);
  }
  return area;
}

// Fraction of [x0, x1] x [y0, y1] lying on or below v = phi(u).
double fraction_below(const Track& track, double x0, double x1, double y0, double y1) {
  if (track(x1) <= y0) return 0.0;
  if (track(x0) >= y1) return 1.0;
  const auto& phi = track.phi();
  auto xs = phi.xs();
  double area = 0.0;
  double u = x0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x0);
  while (u < x1) {
    const double next = (it != xs.end() && *it < x1) ? *it++ : x1;
    area += clamped_area(u, next, phi(u), phi(next), y0, y1);
    u = next;
  }
  return area / ((x1 - x0) * (y1 - y0));
}

}  // namespace

VerificationReport check_grid(const GridCopula& grid, CheckMode mode) {
  const std::size_t n = grid.size();
  auto mesh = grid.mesh();
  auto c = [&grid](std::size_t i, std::size_t j) { return grid.at(i, j); };

  VerificationReport r;
  r.mode = mode;

  r.grounded = true;
  r.margins = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(c(0, k)) > kIdentityTol || std::abs(c(k, 0)) > kIdentityTol) r.grounded = false;
    if (std::abs(c(n - 1, k) - mesh[k]) > kIdentityTol ||
        std::abs(c(k, n - 1) - mesh[k]) > kIdentityTol) {
      r.margins = false;
    }
  }

  r.monotone = true;
  r.lipschitz = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 1; b < n; ++b) {
      const double step = mesh[b] - mesh[b - 1];
      const double limit = step * (1.0 + kLipschitzSlack) + kIdentityTol;
      const double along_y = c(a, b) - c(a, b - 1);
      const double along_x = c(b, a) - c(b - 1, a);
      if (along_y < -kIdentityTol || along_x < -kIdentityTol) r.monotone = false;
      if (std::abs(along_y) > limit || std::abs(along_x) > limit) r.lipschitz = false;
    }
  }

  r.min_cell_volume = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double v = c(i + 1, j + 1) - c(i, j + 1) - c(i + 1, j) + c(i, j);
      if (v < r.min_cell_volume) {
        r.min_cell_volume = v;
        r.worst_cell = {mesh[i], mesh[j]};
      }
    }
  }
  r.two_increasing = r.min_cell_volume >= -kIdentityTol;

  // Every rectangle touching the boundary has a side on x = 0, x = 1, y = 0 or
  // y = 1; its volume is an increment of a single difference sequence.
  double boundary = std::numeric_limits<double>::infinity();
  // Lines i = 0 and i = n - 1 would only give zero-width rectangles.
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      boundary = std::min(boundary, min_increment(n, [&](std::size_t j) { return c(i, j) - c(0, j); }));
      boundary = std::min(boundary, min_increment(n, [&](std::size_t k) { return c(k, i) - c(k, 0); }));
    }
    if (i + 1 < n) {
      boundary = std::min(boundary, min_increment(n, [&](std::size_t j) { return c(n - 1, j) - c(i, j); }));
      boundary = std::min(boundary, min_increment(n, [&](std::size_t k) { return c(k, n - 1) - c(k, i); }));
    }
  }
  r.min_boundary_volume = boundary;
  r.quasi_only_boundary_ok = boundary >= -kIdentityTol;
  return r;
}

ComparisonResult compare(const GridCopula& first, const GridCopula& second) {
  if (!std::ranges::equal(first.mesh(), second.mesh())) {
    throw Error(ErrorCode::MeshMismatch, "grids are defined on different meshes");
  }
  const std::size_t n = first.size();
  auto diff = [&](std::size_t i, std::size_t j) { return first.at(i, j) - second.at(i, j); };

  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lo = std::min(lo, diff(i, j));
      hi = std::max(hi, diff(i, j));
    }
  }

  ComparisonResult result;
  result.max_abs_difference = std::max(hi, -lo);
  if (result.max_abs_difference <= kUserSlack) {
    result.relation = Relation::equal;
  } else if (lo >= -kUserSlack) {
    result.relation = Relation::first_dominates;
  } else if (hi <= kUserSlack) {
    result.relation = Relation::second_dominates;
  } else {
    result.relation = Relation::incomparable;
  }

  if (result.relation == Relation::incomparable) {
    double best = 0.0;
    auto mesh = first.mesh();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double p = diff(i, j) * diff(j, i);
        if (p < best) {
          best = p;
          result.witness_pair = std::pair{mesh[i], mesh[j]};
          result.product = p;
        }
      }
    }
  }
  return result;
}

PointwiseUpperBound::PointwiseUpperBound(const DiagonalSpec& spec, double tol)
    : PointwiseUpperBound([&] {
        auto bounds = psi_bounds(spec, tol);
        return std::pair{CopulaCpsi(quadruplet(spec, bounds.lower, tol)),
                         CopulaCpsi(quadruplet(spec, bounds.upper, tol))};
      }()) {}

PointwiseUpperBound::PointwiseUpperBound(std::pair<CopulaCpsi, CopulaCpsi> copulas)
    : lower_(std::move(copulas.first)), upper_(std::move(copulas.second)) {}

double PointwiseUpperBound::operator()(double x, double y) const {
  const auto& spec = lower_.spec();
  if (spec.track().is_identity()) {
    const auto& zeta = spec.zeta();
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    const double tv = variation(zeta, lo, hi).tv;
    return std::min({x, y, hi - 0.5 * (tv + zeta(x) + zeta(y))});
  }
  return y >= spec.track()(x) ? lower_(x, y) : upper_(x, y);
}

double pointwise_upper_bound(const DiagonalSpec& spec, double x, double y) {
  return PointwiseUpperBound(spec)(x, y);
}

PLFunction extract_psi(const GridCopula& grid, const Track& track) {
  const auto report = check_grid(grid, CheckMode::copula);
  if (!report.copula_ok()) {
    std::ostringstream os;
    os << "grid fails copula checks (min cell volume " << report.min_cell_volume << ")";
    throw Error(ErrorCode::NotACopula, os.str());
  }
  const std::size_t n = grid.size();
  auto mesh = grid.mesh();
  std::vector<double> psi(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double column = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double mass = grid.at(i + 1, j + 1) - grid.at(i, j + 1) - grid.at(i + 1, j) + grid.at(i, j);
      if (mass <= 0.0) continue;
      column += mass * fraction_below(track, mesh[i], mesh[i + 1], mesh[j], mesh[j + 1]);
    }
    psi[i + 1] = psi[i] + column;
  }
  return PLFunction({mesh.begin(), mesh.end()}, std::move(psi));
}

CopulaCpsi dominating_envelope(const GridCopula& grid, const DiagonalSpec& spec, double tol) {
  const auto& track = spec.track();
  const double allowed = 2.0 / static_cast<double>(grid.size());
  for (double x : grid.mesh()) {
    const double section = grid.interpolate(x, track(x));
    const double gap = std::abs(section - spec.delta()(x));
    if (gap > allowed) {
      std::ostringstream os;
      os << "grid track section differs from delta by " << gap << " at x=" << x;
      throw Error(ErrorCode::TrackSectionMismatch, os.str());
    }
  }
  auto candidate = quadruplet(spec, extract_psi(grid, track), tol);
  if (!candidate.eligible) {
    std::ostringstream os;
    os << "extracted psi is not eligible";
    if (candidate.violation) {
      os << ": " << candidate.violation->function << " decreases by " << candidate.violation->drop
         << " at " << candidate.violation->where;
    }
    throw Error(ErrorCode::IneligibleExtractedPsi, os.str());
  }
  return CopulaCpsi(std::move(candidate));
}

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::first_dominates: return "first-dominates";
    case Relation::second_dominates: return "second-dominates";
    case Relation::incomparable: return "incomparable";
  }
  return "unknown";
}

const char* to_string(CheckMode m) noexcept { return m == CheckMode::copula ? "copula" : "quasi"; }

}  // namespace trackcop
