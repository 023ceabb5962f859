#include "problem.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "trackcop/errors.hpp"

namespace trackcop::cli {

namespace {

using nlohmann::json;

PLFunction knots_from_json(const json& j, const char* field) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) {
    throw InputError(std::string(field) + " must be a name or an object with \"x\" and \"y\" arrays");
  }
  try {
    return PLFunction(j.at("x").get<std::vector<double>>(), j.at("y").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw InputError(std::string(field) + ": " + e.what());
  }
}

double parse_blend_weight(std::string_view text) {
  double t = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(t >= 0.0 && t <= 1.0)) {
    throw InputError("blend weight must be a number in [0, 1], got '" + std::string(text) + "'");
  }
  return t;
}

}  // namespace

std::optional<PLFunction> builtin_diagonal(std::string_view name, std::size_t n) {
  constexpr double pi = std::numbers::pi;
  if (name == "m-diag") return PLFunction::identity();
  if (name == "w-diag") return PLFunction({0.0, 0.5, 1.0}, {0.0, 0.0, 1.0});
  if (name == "indep") return PLFunction::sample([](double x) { return x * x; }, n);
  if (name == "fig1") {
    return PLFunction::sample(
        [](double x) {
          const double s = std::sin(2.0 * pi * x);
          return x - s * s / (2.0 * pi);
        },
        n);
  }
  if (name == "fig2") {
    return PLFunction::sample([](double x) { return x - std::sin(pi * x) / pi; }, n);
  }
  return std::nullopt;
}

ProblemSpec parse_problem(std::string_view json_text, std::optional<std::size_t> mesh_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("spec must be a JSON object");

  ProblemSpec spec;
  if (doc.contains("mesh")) {
    const auto& m = doc["mesh"];
    if (!m.is_number_integer() || m.get<long long>() < 3) {
      throw InputError("mesh must be an integer >= 3");
    }
    spec.mesh = m.get<std::size_t>();
  }
  if (mesh_override) {
    if (*mesh_override < 3) throw InputError("mesh must be an integer >= 3");
    spec.mesh = *mesh_override;
  }

  try {
    if (doc.contains("track")) {
      const auto& t = doc["track"];
      if (t.is_string()) {
        if (t.get<std::string>() != "identity") {
          throw InputError("unknown track '" + t.get<std::string>() + "'");
        }
      } else {
        spec.track = Track(knots_from_json(t, "track"));
      }
    }

    if (!doc.contains("diagonal")) throw InputError("spec has no \"diagonal\"");
    const auto& d = doc["diagonal"];
    if (d.is_string()) {
      spec.diagonal_name = d.get<std::string>();
      auto builtin = builtin_diagonal(spec.diagonal_name, spec.mesh);
      if (!builtin) throw InputError("unknown builtin diagonal '" + spec.diagonal_name + "'");
      spec.delta = std::move(*builtin);
    } else {
      spec.diagonal_name = "custom";
      spec.delta = knots_from_json(d, "diagonal");
    }

    if (doc.contains("psi")) {
      const auto& p = doc["psi"];
      if (p.is_string()) {
        spec.psi = p.get<std::string>();
        if (spec.psi.starts_with("blend:")) {
          parse_blend_weight(std::string_view(spec.psi).substr(6));
        } else if (spec.psi != "lower" && spec.psi != "upper") {
          throw InputError("psi must be lower, upper, blend:t or a knot object");
        }
      } else {
        spec.psi = "custom";
        spec.psi_knots = knots_from_json(p, "psi");
      }
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::MalformedKnots:
      case ErrorCode::NotStrictlyIncreasing:
      case ErrorCode::EndpointViolation:
      case ErrorCode::OutOfDomain:
        throw InputError(e.what());
      default:
        throw;
    }
  }
  return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path, std::optional<std::size_t> mesh_override) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read spec file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str(), mesh_override);
}

PLFunction resolve_psi(std::string_view selector, const PsiBounds& bounds) {
  if (selector == "lower") return bounds.lower;
  if (selector == "upper") return bounds.upper;
  if (selector.starts_with("blend:")) {
    const double t = parse_blend_weight(selector.substr(6));
    return combine(scale(bounds.lower, 1.0 - t), scale(bounds.upper, t), CombineOp::add);
  }
  const std::filesystem::path path(selector);
  if (std::filesystem::exists(path)) return read_function_csv(path);
  throw InputError("psi selector '" + std::string(selector) +
                   "' is not lower, upper, blend:t or a function CSV file");
}

}  // namespace trackcop::cli
