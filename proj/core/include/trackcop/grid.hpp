#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace trackcop {

class DiagonalSpec;

/// Values of a bivariate function on a square mesh shared by both axes.
/// `at(i, j)` is the value at (mesh[i], mesh[j]); the first index is x.
class GridCopula {
 public:
  /// Throws BadMesh unless the mesh is strictly increasing from 0 to 1 and
  /// values holds mesh.size()^2 entries.
  GridCopula(std::vector<double> mesh, std::vector<double> values);

  template <class F>
  static GridCopula tabulate(std::vector<double> mesh, F&& f);

  std::size_t size() const noexcept { return mesh_.size(); }
  std::span<const double> mesh() const noexcept { return mesh_; }
  std::span<const double> values() const noexcept { return values_; }

  double at(std::size_t i, std::size_t j) const noexcept { return values_[i * mesh_.size() + j]; }

  /// Bilinear interpolation between mesh lines.
  double interpolate(double x, double y) const;

  bool operator==(const GridCopula&) const = default;

 private:
  std::vector<double> mesh_;
  std::vector<double> values_;
};

/// Throws BadMesh unless mesh is strictly increasing, starts at 0, ends at 1
/// and has at least two points.
void validate_mesh(std::span<const double> mesh);

/// n uniform points plus every knot of the diagonal and the track, and the
/// images and preimages of those knots under the track.
std::vector<double> default_mesh(const DiagonalSpec& spec, std::size_t n);

// ---------------------------------------------------------------------------

template <class F>
GridCopula GridCopula::tabulate(std::vector<double> mesh, F&& f) {
  validate_mesh(mesh);
  const std::size_t n = mesh.size();
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) values[i * n + j] = f(mesh[i], mesh[j]);
  }
  return GridCopula(std::move(mesh), std::move(values));
}

}  // namespace trackcop
