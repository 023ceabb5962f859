#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "problem.hpp"
#include "trackcop/construction.hpp"
#include "trackcop/errors.hpp"
#include "trackcop/splice.hpp"
#include "trackcop/verification.hpp"

namespace trackcop::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Context {
  fs::path out_dir = ".";
  std::optional<std::size_t> mesh;
  double tol = kUserSlack;
  bool quiet = false;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  std::ostream& say() const {
    static std::ofstream sink;
    return quiet ? sink : *out;
  }
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedKnots:
    case ErrorCode::OutOfDomain:
    case ErrorCode::NotStrictlyIncreasing:
    case ErrorCode::EndpointViolation:
    case ErrorCode::BadMesh:
      return kExitBadInput;
    default:
      return kExitFailed;
  }
}

std::optional<double> tol_from_env() {
  const char* raw = std::getenv("TRACKCOP_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view text(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(v >= 0.0)) {
    throw InputError("TRACKCOP_TOL must be a non-negative number, got '" + std::string(text) + "'");
  }
  return v;
}

json to_json(const VerificationReport& r) {
  return {
      {"mode", to_string(r.mode)},
      {"passed", r.passed()},
      {"copula_ok", r.copula_ok()},
      {"quasi_ok", r.quasi_ok()},
      {"grounded", r.grounded},
      {"margins", r.margins},
      {"monotone", r.monotone},
      {"lipschitz", r.lipschitz},
      {"two_increasing", r.two_increasing},
      {"min_cell_volume", r.min_cell_volume},
      {"worst_cell", {r.worst_cell.first, r.worst_cell.second}},
      {"quasi_only_boundary_ok", r.quasi_only_boundary_ok},
      {"min_boundary_volume", r.min_boundary_volume},
  };
}

json to_json(const ComparisonResult& c) {
  json j = {{"relation", to_string(c.relation)}, {"max_abs_difference", c.max_abs_difference}};
  j["witness_pair"] = c.witness_pair ? json{c.witness_pair->first, c.witness_pair->second} : json(nullptr);
  j["product"] = c.product ? json(*c.product) : json(nullptr);
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

fs::path output_path(const Context& ctx, const char* name) {
  fs::create_directories(ctx.out_dir);
  return ctx.out_dir / name;
}

DiagonalSpec diagonal_of(const ProblemSpec& p, const Context& ctx) {
  return make_diagonal(p.delta, p.track, ctx.tol);
}

std::vector<double> mesh_for(const DiagonalSpec& spec, const ProblemSpec& p,
                             std::span<const double> extra = {}) {
  auto mesh = default_mesh(spec, p.mesh);
  return merge_knots(mesh, std::vector<double>(extra.begin(), extra.end()));
}

CopulaCpsi copula_for(const DiagonalSpec& spec, const PsiBounds& bounds, const ProblemSpec& p,
                      std::string_view selector, const Context& ctx) {
  PLFunction psi = selector == "custom" ? *p.psi_knots : resolve_psi(selector, bounds);
  return CopulaCpsi(quadruplet(spec, psi, ctx.tol));
}

int cmd_validate(const Context& ctx, const fs::path& spec_file) {
  const auto p = load_problem(spec_file, ctx.mesh);
  auto& out = ctx.say();
  out << "track: " << (p.track.is_identity() ? "identity" : "piecewise-linear") << " ("
      << p.track.phi().size() << " knots)\n";
  out << "diagonal: " << p.diagonal_name << " (" << p.delta.size() << " knots)\n";

  bool conditions_ok = true;
  try {
    diagonal_of(p, ctx);
    out << "conditions a-d: ok\n";
  } catch (const DiagonalConditionError& e) {
    conditions_ok = false;
    out << "condition " << e.condition() << ": violated at x=" << e.where() << " (" << e.what() << ")\n";
  }

  const auto existence = existence_check(p.delta, p.track, ctx.tol);
  out << "variational criterion: " << (existence.variational_ok ? "ok" : "fails") << '\n';
  out << "lipschitz criterion: " << (existence.lipschitz_ok ? "ok" : "fails") << '\n';
  if (existence.witness) {
    out << "witness interval: [" << existence.witness->first << ", " << existence.witness->second << "]\n";
  }
  const bool exists = conditions_ok && existence.exists;
  out << "copula exists: " << (exists ? "yes" : "no") << '\n';
  return exists ? kExitOk : kExitFailed;
}

int cmd_bounds(const Context& ctx, const fs::path& spec_file) {
  const auto p = load_problem(spec_file, ctx.mesh);
  const auto spec = diagonal_of(p, ctx);
  const auto bounds = psi_bounds(spec, ctx.tol);
  write_function_csv(output_path(ctx, "psi_lower.csv"), bounds.lower);
  write_function_csv(output_path(ctx, "psi_upper.csv"), bounds.upper);
  ctx.say() << "psi_lower(1) = " << bounds.lower(1.0) << "\npsi_upper(1) = " << bounds.upper(1.0)
            << "\nwrote psi_lower.csv, psi_upper.csv to " << ctx.out_dir.string() << '\n';
  return kExitOk;
}

int cmd_build(const Context& ctx, const fs::path& spec_file) {
  const auto p = load_problem(spec_file, ctx.mesh);
  const auto spec = diagonal_of(p, ctx);
  const auto bounds = psi_bounds(spec, ctx.tol);
  const auto copula = copula_for(spec, bounds, p, p.psi, ctx);
  const auto mesh = mesh_for(spec, p, copula.candidate().psi.xs());
  const auto grid = materialize_grid(copula, mesh);
  const auto report = check_grid(grid, CheckMode::copula);

  write_grid_csv(output_path(ctx, "grid.csv"), grid);
  {
    std::ofstream region(output_path(ctx, "region.csv"));
    region << "x,g,h\n";
    char buf[96];
    for (double x : mesh) {
      const int len = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x,
                                    copula.lower_boundary(x), copula.upper_boundary(x));
      region.write(buf, len);
    }
  }

  double diagonal_dev = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double y = spec.track()(mesh[i]);
    diagonal_dev = std::max(diagonal_dev, std::abs(copula(mesh[i], y) - spec.delta()(mesh[i])));
  }
  json j = to_json(report);
  j["psi"] = p.psi;
  j["mesh_size"] = mesh.size();
  j["diagonal_max_deviation"] = diagonal_dev;
  j["region_form_discrepancies"] = region_form_discrepancies(copula, ctx.tol).size();
  write_json(output_path(ctx, "report.json"), j);

  ctx.say() << "copula checks: " << (report.copula_ok() ? "pass" : "FAIL")
            << " (min cell volume " << report.min_cell_volume << ")\n"
            << "wrote grid.csv, region.csv, report.json to " << ctx.out_dir.string() << '\n';
  return report.copula_ok() ? kExitOk : kExitFailed;
}

int cmd_compare(const Context& ctx, const fs::path& spec_file, const std::string& a,
                const std::string& b) {
  const auto p = load_problem(spec_file, ctx.mesh);
  const auto spec = diagonal_of(p, ctx);
  const auto bounds = psi_bounds(spec, ctx.tol);
  const auto first = copula_for(spec, bounds, p, a, ctx);
  const auto second = copula_for(spec, bounds, p, b, ctx);
  const auto mesh = mesh_for(spec, p, merge_knots(first.candidate().psi.xs(), second.candidate().psi.xs()));
  const auto result = compare(materialize_grid(first, mesh), materialize_grid(second, mesh));
  *ctx.out << to_json(result).dump(2) << '\n';
  switch (result.relation) {
    case Relation::equal: return kExitOk;
    case Relation::incomparable: return kExitIncomparable;
    default: return kExitDominance;
  }
}

int cmd_envelope(const Context& ctx, const fs::path& grid_file, const fs::path& spec_file) {
  const auto grid = read_grid_csv(grid_file);
  const auto p = load_problem(spec_file, ctx.mesh);
  const auto spec = diagonal_of(p, ctx);
  const auto envelope = dominating_envelope(grid, spec, ctx.tol);
  const auto env_grid = materialize_grid(envelope, grid.mesh());

  double gain = -std::numeric_limits<double>::infinity();
  std::pair<double, double> where{0.0, 0.0};
  const auto mesh = grid.mesh();
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      const double d = env_grid.at(i, j) - grid.at(i, j);
      if (d > gain) {
        gain = d;
        where = {mesh[i], mesh[j]};
      }
    }
  }
  write_function_csv(output_path(ctx, "psi_envelope.csv"), envelope.candidate().psi);
  write_grid_csv(output_path(ctx, "envelope_grid.csv"), env_grid);
  ctx.say() << "max gain: " << gain << " at (" << where.first << ", " << where.second << ")\n"
            << "wrote psi_envelope.csv, envelope_grid.csv to " << ctx.out_dir.string() << '\n';
  return kExitOk;
}

int cmd_splice(const Context& ctx, const fs::path& spec_file, const std::string& upper,
               const std::string& lower) {
  const auto p = load_problem(spec_file, ctx.mesh);
  const auto spec = diagonal_of(p, ctx);
  const auto bounds = psi_bounds(spec, ctx.tol);
  SplicedFunction spliced(copula_for(spec, bounds, p, upper, ctx), copula_for(spec, bounds, p, lower, ctx));
  const auto mesh = mesh_for(spec, p,
                             merge_knots(spliced.upper().candidate().psi.xs(),
                                         spliced.lower().candidate().psi.xs()));
  const auto grid = splice_grid(spliced, mesh);
  const auto report = check_grid(grid, CheckMode::quasi);

  write_grid_csv(output_path(ctx, "splice_grid.csv"), grid);
  json j = to_json(report);
  j["upper"] = upper;
  j["lower"] = lower;
  write_json(output_path(ctx, "splice_report.json"), j);
  ctx.say() << "quasi-copula checks: " << (report.quasi_ok() ? "pass" : "FAIL") << '\n'
            << "copula checks: " << (report.copula_ok() ? "pass" : "fail") << " (reported only)\n"
            << "wrote splice_grid.csv, splice_report.json to " << ctx.out_dir.string() << '\n';
  return report.quasi_ok() ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copulas with a prescribed section along a track", "trackcop-cli"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  std::string out_dir = ".";
  std::size_t mesh = 0;
  std::optional<double> tol;
  app.add_option("--out", out_dir, "Directory for output files");
  app.add_option("--mesh", mesh, "Uniform mesh size (overrides the spec)")->check(CLI::Range(3, 1 << 20));
  app.add_option("--tol", tol, "Slack for all user-facing checks (default 1e-9)")->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", ctx.quiet, "Suppress the summary on stdout");

  std::string spec_file, grid_file, psi_a, psi_b;
  auto* validate = app.add_subcommand("validate", "Check the diagonal conditions and existence");
  validate->add_option("spec", spec_file)->required();
  auto* bounds = app.add_subcommand("bounds", "Write the least and greatest eligible psi");
  bounds->add_option("spec", spec_file)->required();
  auto* build = app.add_subcommand("build", "Materialise C_psi and verify it");
  build->add_option("spec", spec_file)->required();
  auto* cmp = app.add_subcommand("compare", "Compare C_psi for two psi selectors");
  cmp->add_option("spec", spec_file)->required();
  cmp->add_option("psi-a", psi_a)->required();
  cmp->add_option("psi-b", psi_b)->required();
  auto* envelope = app.add_subcommand("envelope", "Undominated C_psi above a grid copula");
  envelope->add_option("grid", grid_file)->required();
  envelope->add_option("spec", spec_file)->required();
  auto* splice = app.add_subcommand("splice", "Splice two C_psi along the track");
  splice->add_option("spec", spec_file)->required();
  splice->add_option("psi-upper", psi_a)->required();
  splice->add_option("psi-lower", psi_b)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  try {
    ctx.out_dir = out_dir;
    if (mesh != 0) ctx.mesh = mesh;
    if (tol) {
      ctx.tol = *tol;
    } else if (auto env = tol_from_env()) {
      ctx.tol = *env;
    }

    if (validate->parsed()) return cmd_validate(ctx, spec_file);
    if (bounds->parsed()) return cmd_bounds(ctx, spec_file);
    if (build->parsed()) return cmd_build(ctx, spec_file);
    if (cmp->parsed()) return cmd_compare(ctx, spec_file, psi_a, psi_b);
    if (envelope->parsed()) return cmd_envelope(ctx, grid_file, spec_file);
    if (splice->parsed()) return cmd_splice(ctx, spec_file, psi_a, psi_b);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace trackcop::cli
