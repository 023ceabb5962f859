#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trackcop/canonical.hpp"
#include "trackcop/pl_function.hpp"
#include "trackcop/track.hpp"

namespace trackcop::cli {

constexpr std::size_t kDefaultMesh = 201;

/// Raised for unreadable or ill-formed input; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parsed spec file. The diagonal is already sampled when it names a
/// builtin; psi is kept as a selector until the bounds are known.
struct ProblemSpec {
  Track track = Track::identity();
  PLFunction delta = PLFunction::identity();
  std::string diagonal_name;  // builtin name, or "custom"
  std::string psi = "lower";  // lower | upper | blend:t | custom
  std::optional<PLFunction> psi_knots;
  std::size_t mesh = kDefaultMesh;
};

/// The builtin diagonals: m-diag, w-diag, indep, fig1, fig2. Analytic ones
/// are sampled at n uniform knots. Returns nullopt for unknown names.
std::optional<PLFunction> builtin_diagonal(std::string_view name, std::size_t n);

/// mesh_override replaces the "mesh" entry before builtins are sampled.
ProblemSpec parse_problem(std::string_view json_text, std::optional<std::size_t> mesh_override = {});
ProblemSpec load_problem(const std::filesystem::path& path,
                         std::optional<std::size_t> mesh_override = {});

/// Resolves "lower", "upper", "blend:t" against the bounds, or reads a
/// two-column function CSV when the selector names an existing file.
PLFunction resolve_psi(std::string_view selector, const PsiBounds& bounds);

}  // namespace trackcop::cli
