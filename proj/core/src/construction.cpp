#include "trackcop/construction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trackcop/errors.hpp"

namespace trackcop {

namespace {

double crossing(std::span<const double> xs, std::span<const double> ys, std::size_t k, double level) {
  const double rise = ys[k + 1] - ys[k];
  if (rise <= 0.0) return xs[k];
  const double frac = std::clamp((level - ys[k]) / rise, 0.0, 1.0);
  return xs[k] + frac * (xs[k + 1] - xs[k]);
}

// max{y : f(y) <= level} for increasing f.
double last_at_most(const PLFunction& f, double level) {
  auto xs = f.xs();
  auto ys = f.ys();
  auto idx = static_cast<std::size_t>(std::upper_bound(ys.begin(), ys.end(), level) - ys.begin());
  if (idx == 0) return 0.0;
  if (idx == ys.size()) return 1.0;
  return crossing(xs, ys, idx - 1, level);
}

// min{y : f(y) >= level} for increasing f.
double first_at_least(const PLFunction& f, double level) {
  auto xs = f.xs();
  auto ys = f.ys();
  auto idx = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), level) - ys.begin());
  if (idx == 0) return 0.0;
  if (idx == ys.size()) return 1.0;
  return crossing(xs, ys, idx - 1, level);
}

double snap_unit(double v) {
  if (v < 0.0 && v >= -kClampNoise) return 0.0;
  if (v > 1.0 && v <= 1.0 + kClampNoise) return 1.0;
  return v;
}

}  // namespace

CopulaCpsi::CopulaCpsi(PsiCandidate candidate) : candidate_(std::move(candidate)) {
  if (!candidate_.eligible) {
    std::ostringstream os;
    os << "psi is not eligible";
    if (candidate_.violation) {
      os << ": " << candidate_.violation->function << " decreases by " << candidate_.violation->drop
         << " at " << candidate_.violation->where;
    }
    throw Error(ErrorCode::IneligiblePsi, os.str());
  }
}

double CopulaCpsi::kappa(double x, double y) const {
  const double t = spec().track().invert(y);
  return candidate_.psi(x) - candidate_.psi(t) + spec().delta()(t);
}

double CopulaCpsi::lower_boundary(double x) const {
  return std::min(spec().track()(x), last_at_most(candidate_.chi, candidate_.psi(x)));
}

double CopulaCpsi::upper_boundary(double x) const {
  return std::max(spec().track()(x), first_at_least(candidate_.eta, candidate_.xi(x)));
}

double CopulaCpsi::upper_boundary_max_form(double x) const {
  return last_at_most(candidate_.eta, candidate_.xi(x));
}

double CopulaCpsi::value_in_row(double x, double y, double g, double h) const {
  if (y <= g || y >= h) return std::min(x, y);
  return snap_unit(std::min({x, y, kappa(x, y)}));
}

double CopulaCpsi::operator()(double x, double y) const {
  require_unit(x);
  require_unit(y);
  return value_in_row(x, y, lower_boundary(x), upper_boundary(x));
}

StSplit CopulaCpsi::split(double x, double y) const {
  return {std::min(candidate_.psi(x), candidate_.chi(y)), std::min(candidate_.xi(x), candidate_.eta(y))};
}

Branch CopulaCpsi::branch(double x, double y) const {
  if (y < lower_boundary(x) - kIdentityTol) return Branch::lower_m;
  if (y > upper_boundary(x) + kIdentityTol) return Branch::upper_m;
  return Branch::kappa;
}

RegionFunctions region_functions(const CopulaCpsi& copula) {
  auto knots = merge_knots(copula.candidate().psi.xs(), copula.spec().knots());
  auto g = PLFunction::sample_at([&](double x) { return copula.lower_boundary(x); }, knots);
  auto h = PLFunction::sample_at([&](double x) { return copula.upper_boundary(x); }, std::move(knots));
  return {std::move(g), std::move(h)};
}

GridCopula materialize_grid(const CopulaCpsi& copula, std::span<const double> mesh) {
  validate_mesh(mesh);
  const std::size_t n = mesh.size();
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = mesh[i];
    const double g = copula.lower_boundary(x);
    const double h = copula.upper_boundary(x);
    for (std::size_t j = 0; j < n; ++j) values[i * n + j] = copula.value_in_row(x, mesh[j], g, h);
  }
  return GridCopula({mesh.begin(), mesh.end()}, std::move(values));
}

std::vector<RegionDiscrepancy> region_form_discrepancies(const CopulaCpsi& copula, double tol) {
  std::vector<RegionDiscrepancy> out;
  const auto knots = merge_knots(copula.candidate().psi.xs(), copula.spec().knots());
  for (double x : knots) {
    const double tight = copula.upper_boundary(x);
    const double loose = copula.upper_boundary_max_form(x);
    if (std::abs(tight - loose) > tol) out.push_back({x, tight, loose});
  }
  return out;
}

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::lower_m: return "lower-M";
    case Branch::kappa: return "kappa";
    case Branch::upper_m: return "upper-M";
  }
  return "unknown";
}

}  // namespace trackcop
