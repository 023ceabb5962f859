#include "trackcop/splice.hpp"

#include <algorithm>
#include <sstream>

#include "trackcop/errors.hpp"

namespace trackcop {

SplicedFunction::SplicedFunction(CopulaCpsi upper, CopulaCpsi lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (!(upper_.spec() == lower_.spec())) {
    throw Error(ErrorCode::SpecMismatch, "spliced constructions have different diagonal specs");
  }
}

double SplicedFunction::operator()(double u, double v) const {
  return v >= spec().track()(u) ? upper_(u, v) : lower_(u, v);
}

GridCopula splice_grid(const SplicedFunction& s, std::span<const double> mesh) {
  validate_mesh(mesh);
  for (double k : s.spec().track().phi().xs()) {
    if (!std::binary_search(mesh.begin(), mesh.end(), k)) {
      std::ostringstream os;
      os << "mesh is missing track knot " << k;
      throw Error(ErrorCode::BadMesh, os.str());
    }
  }
  const auto upper = materialize_grid(s.upper(), mesh);
  const auto lower = materialize_grid(s.lower(), mesh);
  const auto& track = s.spec().track();
  const std::size_t n = mesh.size();
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double level = track(mesh[i]);
    for (std::size_t j = 0; j < n; ++j) {
      values[i * n + j] = mesh[j] >= level ? upper.at(i, j) : lower.at(i, j);
    }
  }
  return GridCopula({mesh.begin(), mesh.end()}, std::move(values));
}

}  // namespace trackcop
