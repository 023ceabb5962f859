#include "trackcop/track.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trackcop/errors.hpp"

namespace trackcop {

namespace {

bool knots_are_identity(const PLFunction& phi) {
  auto xs = phi.xs();
  auto ys = phi.ys();
  return std::equal(xs.begin(), xs.end(), ys.begin(), ys.end());
}

std::string at(double x) {
  std::ostringstream os;
  os << " at t=" << x;
  return os.str();
}

}  // namespace

Track::Track(PLFunction phi)
    : phi_(std::move(phi)), phi_inv_(PLFunction::identity()), identity_(false) {
  auto ys = phi_.ys();
  if (ys.front() != 0.0 || ys.back() != 1.0) {
    throw Error(ErrorCode::EndpointViolation, "track must satisfy phi(0) = 0 and phi(1) = 1");
  }
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (!(ys[i] > ys[i - 1])) {
      throw Error(ErrorCode::NotStrictlyIncreasing,
                  "track is not strictly increasing" + at(phi_.xs()[i]));
    }
  }
  phi_inv_ = PLFunction({ys.begin(), ys.end()}, {phi_.xs().begin(), phi_.xs().end()});
  identity_ = knots_are_identity(phi_);
}

Track Track::identity() { return Track(PLFunction::identity()); }

Track make_track(PLFunction phi) { return Track(std::move(phi)); }

PLFunction Track::pull_to_y(const PLFunction& f) const {
  if (identity_) return f;
  // On every interval between consecutive t in the union both f and phi are
  // linear in t, so f(phi^-1(y)) is linear in y between the images phi(t).
  auto ts = merge_knots(f.xs(), phi_.xs());
  std::vector<double> ys;
  std::vector<double> vs;
  ys.reserve(ts.size());
  vs.reserve(ts.size());
  for (double t : ts) {
    const double y = phi_(t);
    if (!ys.empty() && !(y > ys.back())) continue;
    ys.push_back(y);
    vs.push_back(f(t));
  }
  ys.back() = 1.0;
  vs.back() = f(1.0);
  return PLFunction(std::move(ys), std::move(vs));
}

DiagonalSpec::DiagonalSpec(Track track, PLFunction delta)
    : track_(std::move(track)),
      delta_(std::move(delta)),
      zeta_(PLFunction::identity() - delta_),
      delta_tilde_(track_.phi() - delta_),
      knots_(merge_knots(delta_.xs(), track_.phi().xs())) {}

DiagonalSpec make_diagonal(PLFunction delta, Track track, double tol) {
  const double end = delta(1.0);
  if (std::abs(end - 1.0) > tol) {
    std::ostringstream os;
    os << "(a) delta(1) = " << end << " differs from 1";
    throw DiagonalConditionError('a', 1.0, os.str());
  }

  const auto knots = merge_knots(delta.xs(), track.phi().xs());
  for (double t : knots) {
    const double d = delta(t);
    const double bound = std::min(t, track(t));
    if (d > bound + tol || d < -tol) {
      std::ostringstream os;
      os << "(b) delta = " << d << " outside [0, min(t, phi(t)) = " << bound << "]" << at(t);
      throw DiagonalConditionError('b', t, os.str());
    }
  }

  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double t0 = knots[i - 1];
    const double t1 = knots[i];
    const double rise = delta(t1) - delta(t0);
    if (rise < -tol) {
      throw DiagonalConditionError('c', t1, "(c) delta decreases" + at(t1));
    }
  }

  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double t0 = knots[i - 1];
    const double t1 = knots[i];
    const double rise = delta(t1) - delta(t0);
    const double allowed = (t1 - t0) + (track(t1) - track(t0));
    if (rise > allowed + tol) {
      std::ostringstream os;
      os << "(d) delta rises by " << rise << " on [" << t0 << ", " << t1 << "], more than "
         << allowed;
      throw DiagonalConditionError('d', t0, os.str());
    }
  }

  return DiagonalSpec(std::move(track), std::move(delta));
}

ExistenceReport existence_check(const PLFunction& delta, const Track& track, double tol) {
  const auto knots = merge_knots(delta.xs(), track.phi().xs());
  const auto zeta = PLFunction::identity() - delta;
  const auto delta_tilde = track.phi() - delta;
  const auto neg_tilde = negative_variation_majorant(delta_tilde);
  const auto pos_zeta = positive_variation_majorant(zeta);

  // Both criteria say that a running quantity never drops by more than tol
  // between two knots x <= y.
  std::vector<double> slack_variational;
  std::vector<double> slack_lipschitz;
  slack_variational.reserve(knots.size());
  slack_lipschitz.reserve(knots.size());
  for (double t : knots) {
    slack_variational.push_back(t - neg_tilde(t) - pos_zeta(t));
    slack_lipschitz.push_back(t + track(t) - delta(t));
  }

  ExistenceReport report;
  const auto drop = find_drop(slack_variational, tol);
  report.variational_ok = !drop.has_value();
  report.lipschitz_ok = !find_drop(slack_lipschitz, tol).has_value();
  report.exists = report.variational_ok;
  if (drop) report.witness = std::pair{knots[drop->first], knots[drop->second]};
  return report;
}

ExistenceReport existence_check(const DiagonalSpec& spec, double tol) {
  return existence_check(spec.delta(), spec.track(), tol);
}

}  // namespace trackcop
