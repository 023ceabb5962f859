#pragma once

namespace trackcop {

// Float noise in internal identities.
inline constexpr double kIdentityTol = 1e-12;
// Slack for user-supplied data: monotonicity, diagonal conditions, eligibility.
inline constexpr double kUserSlack = 1e-9;
// Threshold below which values outside [0,1] are snapped back into range.
inline constexpr double kClampNoise = 1e-15;

}  // namespace trackcop
