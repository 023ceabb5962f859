#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "csv.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "problem.hpp"

using namespace trackcop;
using namespace trackcop::cli;
using namespace trackcop::testing;
using Catch::Matchers::WithinAbs;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("trackcop_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }

 private:
  fs::path path_;
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double grid_value(const GridCopula& g, double x, double y) {
  const auto mesh = g.mesh();
  const auto i = static_cast<std::size_t>(std::find(mesh.begin(), mesh.end(), x) - mesh.begin());
  const auto j = static_cast<std::size_t>(std::find(mesh.begin(), mesh.end(), y) - mesh.begin());
  REQUIRE(i < mesh.size());
  REQUIRE(j < mesh.size());
  return g.at(i, j);
}

}  // namespace

TEST_CASE("validate exit codes", "[cli]") {
  TempDir dir;
  CHECK(run({"validate", dir.write("w.json", R"({"diagonal": "w-diag", "track": "identity"})").string()}).code == 0);

  const auto steep = run({"validate", dir.write("s.json", R"({"diagonal": {"x": [0, 0.4, 0.5, 1], "y": [0, 0, 0.3, 1]}})").string()});
  CHECK(steep.code == 1);
  CHECK(steep.out.find("witness interval: [0.4, 0.5]") != std::string::npos);

  CHECK(run({"validate", dir.write("bad.json", R"({"diagonal": )").string()}).code == 2);
  CHECK(run({"validate", dir.write("unk.json", R"({"diagonal": "fig9"})").string()}).code == 2);
  CHECK(run({"validate", dir.write("flat.json", R"({"diagonal": "m-diag", "track": {"x": [0, 0.5, 1], "y": [0, 0.5, 0.5]}})").string()}).code == 2);
  CHECK(run({"validate", dir.write("knots.json", R"({"diagonal": {"x": [0, 0.6, 0.5, 1], "y": [0, 0, 0, 1]}})").string()}).code == 2);
  CHECK(run({"validate", (dir / "missing.json").string()}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"validate", dir.write("m3.json", R"({"diagonal": "m-diag", "mesh": 2})").string()}).code == 2);
}

TEST_CASE("bounds", "[cli]") {
  TempDir dir;
  const auto m = dir.write("m.json", R"({"diagonal": "m-diag"})");
  REQUIRE(run({"bounds", m.string(), "--out", (dir / "m").string()}).code == 0);
  const auto lo = read_function_csv(dir / "m" / "psi_lower.csv");
  const auto hi = read_function_csv(dir / "m" / "psi_upper.csv");
  for (double y : lo.ys()) CHECK(y == 0.0);
  CHECK(hi == PLFunction::identity());

  const auto w = dir.write("w.json", R"({"diagonal": "w-diag"})");
  REQUIRE(run({"bounds", w.string(), "--out", (dir / "w").string()}).code == 0);
  CHECK(read_function_csv(dir / "w" / "psi_lower.csv") == read_function_csv(dir / "w" / "psi_upper.csv"));

  const auto f2 = dir.write("f2.json", R"({"diagonal": "fig2"})");
  REQUIRE(run({"bounds", f2.string(), "--mesh", "1001", "--out", (dir / "f2").string()}).code == 0);
  const auto up = read_function_csv(dir / "f2" / "psi_upper.csv");
  CHECK(up.size() == 1001);
  CHECK_THAT(up.ys().back(), WithinAbs(kFig2PsiUpperAt1, 1e-4));
}

TEST_CASE("build", "[cli]") {
  TempDir dir;
  const auto f2 = dir.write("f2.json", R"({"diagonal": "fig2", "psi": "lower", "mesh": 201})");
  const auto r = run({"build", f2.string(), "--out", dir.path().string()});
  REQUIRE(r.code == 0);
  const auto grid = read_grid_csv(dir / "grid.csv");
  CHECK_THAT(grid_value(grid, 0.5, 0.6), WithinAbs(kFig2CLowerAt0506, 1e-4));
  std::ifstream report(dir / "report.json");
  std::string text((std::istreambuf_iterator<char>(report)), {});
  CHECK(text.find("\"copula_ok\": true") != std::string::npos);

  const auto f1 = dir.write("f1.json", R"({"diagonal": "fig1", "psi": "upper"})");
  REQUIRE(run({"build", f1.string(), "--out", (dir / "f1").string()}).code == 0);
  std::ifstream region(dir / "f1" / "region.csv");
  std::string line;
  bool seen = false;
  while (std::getline(region, line)) {
    if (line.starts_with("0.5,")) {
      CHECK(line == "0.5,0.5,0.5");
      seen = true;
    }
  }
  CHECK(seen);

  const auto m = dir.write("m.json", R"({"diagonal": "m-diag", "psi": {"x": [0, 1], "y": [0, 0.5]}, "mesh": 21})");
  REQUIRE(run({"build", m.string(), "--out", (dir / "m").string()}).code == 0);
  const auto mg = read_grid_csv(dir / "m" / "grid.csv");
  CHECK(mg == GridCopula::tabulate(std::vector<double>(mg.mesh().begin(), mg.mesh().end()), m_copula));

  const auto bad = dir.write("bad.json", R"({"diagonal": "fig2", "psi": {"x": [0, 1], "y": [0, 0.3]}})");
  const auto rb = run({"build", bad.string(), "--out", (dir / "bad").string()});
  CHECK(rb.code == 1);
  CHECK(rb.err.find("IneligiblePsi") != std::string::npos);
}

TEST_CASE("compare", "[cli]") {
  TempDir dir;
  const auto f2 = dir.write("f2.json", R"({"diagonal": "fig2", "mesh": 101})");
  const auto r = run({"compare", f2.string(), "lower", "upper"});
  CHECK(r.code == 3);
  CHECK(r.out.find("\"incomparable\"") != std::string::npos);
  CHECK(run({"compare", f2.string(), "lower", "lower"}).code == 0);
  CHECK(run({"compare", f2.string(), "blend:0.5", "blend:0.5"}).code == 0);
  CHECK(run({"compare", f2.string(), "lower", "blend:1.5"}).code == 2);

  const auto w = dir.write("w.json", R"({"diagonal": "w-diag"})");
  CHECK(run({"compare", w.string(), "lower", "upper"}).code == 0);

  // A psi file that is not eligible.
  std::ofstream(dir / "psi.csv") << "x,value\n0,0\n1,0.3\n";
  CHECK(run({"compare", f2.string(), "lower", (dir / "psi.csv").string()}).code == 1);
}

TEST_CASE("envelope", "[cli]") {
  TempDir dir;
  const auto mesh = uniform_knots(201);
  write_grid_csv(dir / "pi.csv", GridCopula::tabulate(mesh, pi_copula));
  const auto spec = dir.write("indep.json", R"({"diagonal": "indep"})");
  const auto r = run({"envelope", (dir / "pi.csv").string(), spec.string(), "--out", dir.path().string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("max gain") != std::string::npos);
  const auto psi = read_function_csv(dir / "psi_envelope.csv");
  for (double x : mesh) CHECK_THAT(psi(x), WithinAbs(0.5 * x * x, 2.0 / 201));
  const auto env = read_grid_csv(dir / "envelope_grid.csv");
  CHECK_THAT(grid_value(env, 0.4, 0.6), WithinAbs(0.26, 5e-3));

  const auto w = dir.write("w.json", R"({"diagonal": "w-diag"})");
  CHECK(run({"envelope", (dir / "pi.csv").string(), w.string(), "--out", dir.path().string()}).code == 1);

  std::ofstream(dir / "ragged.csv") << ",0,1\n0,0,0\n1,0\n";
  CHECK(run({"envelope", (dir / "ragged.csv").string(), spec.string()}).code == 2);
}

TEST_CASE("splice", "[cli]") {
  TempDir dir;
  const auto f2 = dir.write("f2.json", R"({"diagonal": "fig2", "mesh": 101})");
  REQUIRE(run({"splice", f2.string(), "lower", "lower", "--out", (dir / "a").string()}).code == 0);
  std::ifstream report(dir / "a" / "splice_report.json");
  std::string text((std::istreambuf_iterator<char>(report)), {});
  CHECK(text.find("\"copula_ok\": true") != std::string::npos);

  REQUIRE(run({"splice", f2.string(), "lower", "upper", "--out", (dir / "b").string()}).code == 0);
  const auto grid = read_grid_csv(dir / "b" / "splice_grid.csv");
  CHECK_THAT(grid_value(grid, 0.5, 0.6), WithinAbs(kFig2CLowerAt0506, 1e-4));

  const auto m = dir.write("m.json", R"({"diagonal": "m-diag", "mesh": 11})");
  REQUIRE(run({"splice", m.string(), "lower", "upper", "--out", (dir / "m").string()}).code == 0);
  const auto mg = read_grid_csv(dir / "m" / "splice_grid.csv");
  CHECK(mg == GridCopula::tabulate(uniform_knots(11), m_copula));
}

TEST_CASE("flags and tolerance", "[cli]") {
  TempDir dir;
  const auto w = dir.write("w.json", R"({"diagonal": "w-diag"})");
  CHECK(run({"validate", w.string(), "--quiet"}).out.empty());
  CHECK(run({"--help"}).code == 0);

  // Slightly too steep: rejected at the default slack, accepted with --tol.
  const auto steep = dir.write("s.json", R"({"diagonal": {"x": [0, 0.5, 1], "y": [0, 0, 1.000001]}})");
  CHECK(run({"validate", steep.string()}).code == 1);
  CHECK(run({"validate", steep.string(), "--tol", "1e-5"}).code == 0);

  ::setenv("TRACKCOP_TOL", "1e-5", 1);
  CHECK(run({"validate", steep.string()}).code == 0);
  CHECK(run({"validate", steep.string(), "--tol", "1e-9"}).code == 1);
  ::setenv("TRACKCOP_TOL", "lots", 1);
  CHECK(run({"validate", steep.string()}).code == 2);
  ::unsetenv("TRACKCOP_TOL");
}

TEST_CASE("csv round trip is exact", "[cli][property]") {
  Rng rng(909);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mesh = random_knots(rng, uniform_count(rng, 2, 30));
    const auto grid = GridCopula::tabulate(mesh, [&](double, double) { return uniform(rng, -1, 1) * 1e-3 + std::ldexp(uniform(rng), -20); });
    std::stringstream ss;
    write_grid_csv(ss, grid);
    CHECK(read_grid_csv(ss) == grid);

    const auto f = random_pl(rng, uniform_count(rng, 2, 30));
    std::stringstream fs_;
    write_function_csv(fs_, f);
    CHECK(read_function_csv(fs_) == f);
  }
}

TEST_CASE("builtin diagonals", "[cli]") {
  for (const char* name : {"m-diag", "w-diag", "indep", "fig1", "fig2"}) {
    const auto d = builtin_diagonal(name, 101);
    REQUIRE(d);
    CHECK_NOTHROW(make_diagonal(*d, Track::identity()));
  }
  CHECK(builtin_diagonal("w-diag", 101)->size() == 3);
  CHECK(builtin_diagonal("fig2", 101)->size() == 101);
  CHECK_FALSE(builtin_diagonal("nope", 101));
}
