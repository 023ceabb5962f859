#pragma once

#include <span>

#include "trackcop/construction.hpp"
#include "trackcop/grid.hpp"

namespace trackcop {

/// Two C_psi constructions on the same diagonal glued along the track: the
/// upper one on and above v = phi(u), the lower one strictly below.
class SplicedFunction {
 public:
  /// Throws SpecMismatch unless both share phi and delta.
  SplicedFunction(CopulaCpsi upper, CopulaCpsi lower);

  const CopulaCpsi& upper() const noexcept { return upper_; }
  const CopulaCpsi& lower() const noexcept { return lower_; }
  const DiagonalSpec& spec() const noexcept { return upper_.spec(); }

  double operator()(double u, double v) const;

 private:
  CopulaCpsi upper_;
  CopulaCpsi lower_;
};

/// Throws BadMesh if the mesh is invalid or misses a track knot.
GridCopula splice_grid(const SplicedFunction& s, std::span<const double> mesh);

}  // namespace trackcop
