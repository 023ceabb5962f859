#include "trackcop/grid.hpp"

#include <algorithm>
#include <sstream>

#include "trackcop/errors.hpp"
#include "trackcop/track.hpp"

namespace trackcop {

void validate_mesh(std::span<const double> mesh) {
  if (mesh.size() < 2) throw Error(ErrorCode::BadMesh, "mesh needs at least two points");
  if (mesh.front() != 0.0 || mesh.back() != 1.0) {
    throw Error(ErrorCode::BadMesh, "mesh must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    if (!(mesh[i] > mesh[i - 1])) {
      std::ostringstream os;
      os << "mesh not strictly increasing at index " << i;
      throw Error(ErrorCode::BadMesh, os.str());
    }
  }
}

GridCopula::GridCopula(std::vector<double> mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  validate_mesh(mesh_);
  if (values_.size() != mesh_.size() * mesh_.size()) {
    throw Error(ErrorCode::BadMesh, "grid values are not a square matrix over the mesh");
  }
}

double GridCopula::interpolate(double x, double y) const {
  require_unit(x);
  require_unit(y);
  auto cell = [this](double v) {
    auto it = std::upper_bound(mesh_.begin(), mesh_.end(), v);
    auto k = static_cast<std::size_t>(it - mesh_.begin());
    return std::min(k, mesh_.size() - 1) - 1;
  };
  const std::size_t i = cell(x);
  const std::size_t j = cell(y);
  const double tx = (x - mesh_[i]) / (mesh_[i + 1] - mesh_[i]);
  const double ty = (y - mesh_[j]) / (mesh_[j + 1] - mesh_[j]);
  const double lo = at(i, j) + tx * (at(i + 1, j) - at(i, j));
  const double hi = at(i, j + 1) + tx * (at(i + 1, j + 1) - at(i, j + 1));
  return lo + ty * (hi - lo);
}

std::vector<double> default_mesh(const DiagonalSpec& spec, std::size_t n) {
  const auto& track = spec.track();
  auto mesh = merge_knots(uniform_knots(n), spec.knots());
  if (track.is_identity()) return mesh;

  std::vector<double> mapped;
  mapped.reserve(2 * spec.knots().size());
  for (double t : spec.knots()) {
    mapped.push_back(track(t));
    mapped.push_back(track.invert(t));
  }
  std::sort(mapped.begin(), mapped.end());
  return merge_knots(mesh, mapped);
}

}  // namespace trackcop
