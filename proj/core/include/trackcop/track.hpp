#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trackcop/pl_function.hpp"
#include "trackcop/tolerances.hpp"

namespace trackcop {

/// Strictly increasing bijection of [0,1] together with its exact inverse.
class Track {
 public:
  /// Throws NotStrictlyIncreasing if some knot increment is <= 0 and
  /// EndpointViolation unless phi(0) = 0 and phi(1) = 1.
  explicit Track(PLFunction phi);

  static Track identity();

  const PLFunction& phi() const noexcept { return phi_; }
  const PLFunction& inverse() const noexcept { return phi_inv_; }
  bool is_identity() const noexcept { return identity_; }

  double operator()(double x) const { return identity_ ? require_unit(x) : phi_(x); }
  double invert(double y) const { return identity_ ? require_unit(y) : phi_inv_(y); }

  /// f o phi^-1 as an exact piecewise-linear function of y.
  PLFunction pull_to_y(const PLFunction& f) const;

  bool operator==(const Track& other) const { return phi_ == other.phi_; }

 private:
  PLFunction phi_;
  PLFunction phi_inv_;
  bool identity_;
};

Track make_track(PLFunction phi);

/// A validated track diagonal delta with the derived gaps
/// zeta = x - delta and delta_tilde = phi - delta.
class DiagonalSpec {
 public:
  const Track& track() const noexcept { return track_; }
  const PLFunction& delta() const noexcept { return delta_; }
  const PLFunction& zeta() const noexcept { return zeta_; }
  const PLFunction& delta_tilde() const noexcept { return delta_tilde_; }

  /// Union of the delta and phi knots.
  const std::vector<double>& knots() const noexcept { return knots_; }

  bool operator==(const DiagonalSpec& other) const {
    return track_ == other.track_ && delta_ == other.delta_;
  }

 private:
  friend DiagonalSpec make_diagonal(PLFunction delta, Track track, double tol);
  DiagonalSpec(Track track, PLFunction delta);

  Track track_;
  PLFunction delta_;
  PLFunction zeta_;
  PLFunction delta_tilde_;
  std::vector<double> knots_;
};

/// Checks the four diagonal conditions on the common knot refinement:
/// (a) delta(1) = 1, (b) delta <= min(t, phi(t)) and delta >= 0,
/// (c) delta increasing, (d) delta increments <= t increments + phi increments.
/// Throws DiagonalConditionError naming the first failing condition.
DiagonalSpec make_diagonal(PLFunction delta, Track track, double tol = kUserSlack);

struct ExistenceReport {
  bool exists = false;
  bool variational_ok = false;
  bool lipschitz_ok = false;
  /// First interval [x, y] on which the variational bound fails.
  std::optional<std::pair<double, double>> witness;
};

/// Decides whether some copula has track section delta along the track:
/// the variational form  V-_{x,y}(phi - delta) + V+_{x,y}(zeta) <= y - x
/// and the Lipschitz form  delta(y) - delta(x) <= (y - x) + (phi(y) - phi(x))
/// are both evaluated over all knot pairs with slack tol. The two agree for
/// any increasing delta.
ExistenceReport existence_check(const PLFunction& delta, const Track& track,
                                double tol = kUserSlack);
ExistenceReport existence_check(const DiagonalSpec& spec, double tol = kUserSlack);

}  // namespace trackcop
