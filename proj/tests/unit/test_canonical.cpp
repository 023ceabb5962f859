#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "oracles.hpp"
#include "trackcop/canonical.hpp"
#include "trackcop/errors.hpp"

using namespace trackcop;
using namespace trackcop::testing;
using Catch::Matchers::WithinAbs;

namespace {

DiagonalSpec m_spec() { return make_diagonal(PLFunction::identity(), Track::identity()); }
DiagonalSpec w_spec() { return make_diagonal(make_pl({0, 0.5, 1}, {0, 0, 1}), Track::identity()); }
DiagonalSpec indep_spec(std::size_t n) {
  return make_diagonal(PLFunction::sample([](double x) { return x * x; }, n), Track::identity());
}
DiagonalSpec fig2_spec(std::size_t n) {
  return make_diagonal(PLFunction::sample(fig2_delta, n), Track::identity());
}
DiagonalSpec fig1_spec(std::size_t n) {
  return make_diagonal(PLFunction::sample(fig1_delta, n), Track::identity());
}

void check_same(const PLFunction& f, const PLFunction& g, double tol) {
  for (double x : merge_knots(f.xs(), g.xs())) CHECK_THAT(f(x), WithinAbs(g(x), tol));
}

}  // namespace

TEST_CASE("quadruplet on the M diagonal", "[canonical]") {
  const auto c = quadruplet(m_spec(), PLFunction::constant(0.0));
  CHECK(c.eligible);
  check_same(c.chi, PLFunction::constant(0.0), 0.0);
  check_same(c.eta, PLFunction::identity(), 0.0);
  check_same(c.xi, PLFunction::identity(), 0.0);
}

TEST_CASE("quadruplet on the independence diagonal", "[canonical]") {
  const auto spec = indep_spec(101);
  const auto psi = PLFunction::sample([](double x) { return 0.5 * x * x; }, 101);
  const auto c = quadruplet(spec, psi);
  CHECK(c.eligible);
  for (double x : uniform_knots(101)) {
    CHECK_THAT(c.eta(x), WithinAbs(0.5 * x * x, 1e-15));
    CHECK_THAT(c.chi(x), WithinAbs(x - 0.5 * x * x, 1e-15));
    CHECK_THAT(c.xi(x), WithinAbs(x - 0.5 * x * x, 1e-15));
  }
  CHECK(eligibility_by_variation(spec, psi).eligible);
}

TEST_CASE("x/pi is not eligible for the Fig-2 diagonal", "[canonical]") {
  const auto spec = fig2_spec(1001);
  const auto psi = make_pl({0, 1}, {0, 1 / std::numbers::pi});
  const auto c = quadruplet(spec, psi);
  CHECK_FALSE(c.eligible);
  REQUIRE(c.violation);
  CHECK(c.violation->drop > 0.0);
  const auto v = eligibility_by_variation(spec, psi);
  CHECK_FALSE(v.eligible);
  CHECK(v.witness);
  CHECK_FALSE(brute_eligible(spec.delta(), spec.track(), psi, kUserSlack));
}

TEST_CASE("psi must vanish at 0", "[canonical]") {
  const auto psi = make_pl({0, 1}, {0.01, 0.5});
  try {
    quadruplet(m_spec(), psi);
    FAIL("unanchored psi accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PsiNotAnchored);
  }
  CHECK_THROWS_AS(eligibility_by_variation(m_spec(), psi), Error);
}

TEST_CASE("eligibility by variation", "[canonical]") {
  CHECK(eligibility_by_variation(w_spec(), make_pl({0, 0.5, 1}, {0, 0, 0.5})).eligible);
  CHECK_FALSE(eligibility_by_variation(w_spec(), make_pl({0, 0.5, 1}, {0, 0.01, 0.5})).eligible);
  CHECK(eligibility_by_variation(m_spec(), make_pl({0, 0.3, 1}, {0, 0.3, 0.4})).eligible);
  CHECK_FALSE(eligibility_by_variation(m_spec(), make_pl({0, 0.3, 1}, {0, 0.31, 0.4})).eligible);
}

TEST_CASE("extremal psi", "[canonical]") {
  SECTION("M diagonal") {
    const auto b = psi_bounds(m_spec());
    check_same(b.lower, PLFunction::constant(0.0), 0.0);
    check_same(b.upper, PLFunction::identity(), 0.0);
  }
  SECTION("W diagonal has a single eligible psi") {
    const auto b = psi_bounds(w_spec());
    const auto expected = make_pl({0, 0.5, 1}, {0, 0, 0.5});
    check_same(b.lower, expected, 1e-15);
    check_same(b.upper, expected, 1e-15);
  }
  SECTION("Fig-2 diagonal") {
    const auto b = psi_bounds(fig2_spec(1001));
    CHECK_THAT(b.lower(0.6), WithinAbs(kFig2PsiLowerAt06, 1e-5));
    CHECK_THAT(b.upper(0.5), WithinAbs(kFig2PsiUpperAt05, 1e-5));
    CHECK_THAT(b.upper(1.0), WithinAbs(kFig2PsiUpperAt1, 1e-5));
    CHECK_THAT(b.lower(1.0), WithinAbs(1.0 / std::numbers::pi, 1e-5));
  }
  SECTION("no bounds without a copula") {
    // Accepted only under a loose slack: slope 2.1 on [0.5, 1].
    const auto spec = make_diagonal(make_pl({0, 0.5, 1}, {0, -0.05, 1}), Track::identity(), 0.1);
    try {
      psi_bounds(spec);
      FAIL("bounds for a diagonal without copula");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoCopulaExists);
    }
  }
}

TEST_CASE("candidate identities hold", "[canonical]") {
  const auto spec = fig1_spec(201);
  const auto b = psi_bounds(spec);
  for (const auto* psi : {&b.lower, &b.upper}) {
    const auto c = quadruplet(spec, *psi);
    REQUIRE(c.eligible);
    CHECK_THAT(c.psi(1.0), WithinAbs(c.chi(1.0), 1e-12));
    CHECK_THAT(c.psi(1.0), WithinAbs(1.0 - c.eta(1.0), 1e-12));
    CHECK_THAT(c.psi(1.0), WithinAbs(1.0 - c.xi(1.0), 1e-12));
    for (double y : c.chi.xs()) CHECK_THAT(c.chi(y), WithinAbs(y - c.eta(y), 1e-12));
  }
}

TEST_CASE("blend", "[canonical]") {
  const auto spec = fig2_spec(201);
  const auto b = psi_bounds(spec);
  const auto lo = quadruplet(spec, b.lower);
  const auto hi = quadruplet(spec, b.upper);
  CHECK(blend(lo, hi, 0.0).psi == lo.psi);
  CHECK(blend(lo, hi, 1.0).psi == hi.psi);
  for (double t : {0.25, 0.5, 0.75}) {
    const auto c = blend(lo, hi, t);
    CHECK(c.eligible);
    CHECK_THAT(c.psi(0.5), WithinAbs((1 - t) * b.lower(0.5) + t * b.upper(0.5), 1e-15));
  }

  const auto w = w_spec();
  const auto wb = psi_bounds(w);
  const auto mid = blend(quadruplet(w, wb.lower), quadruplet(w, wb.upper), 0.5);
  check_same(mid.psi, make_pl({0, 0.5, 1}, {0, 0, 0.5}), 1e-15);

  try {
    blend(lo, quadruplet(w, wb.lower), 0.5);
    FAIL("blend across specs");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecMismatch);
  }
  const auto bad = quadruplet(spec, make_pl({0, 1}, {0, 1 / std::numbers::pi}));
  CHECK_THROWS_AS(blend(lo, bad, 0.5), Error);
}

TEST_CASE("bounds are extremal among random eligible psi", "[canonical][property]") {
  Rng rng(404);
  for (const auto& spec : {fig1_spec(61), fig2_spec(61), indep_spec(61), w_spec()}) {
    const auto b = psi_bounds(spec);
    const auto& knots = spec.knots();
    for (std::size_t i = 0; i < knots.size(); ++i) {
      for (std::size_t j = i + 1; j < knots.size(); ++j) {
        const double x = knots[i], y = knots[j];
        CHECK_THAT(b.lower(y) - b.lower(x), WithinAbs(variation(spec.delta_tilde(), x, y).vminus, 1e-12));
        CHECK_THAT(b.upper(y) - b.upper(x), WithinAbs((y - x) - variation(spec.zeta(), x, y).vplus, 1e-12));
      }
    }
    for (int k = 0; k < 50; ++k) {
      const auto psi = random_eligible_psi(rng, spec);
      REQUIRE(quadruplet(spec, psi).eligible);
      for (double x : knots) {
        CHECK(psi(x) >= b.lower(x) - 1e-9);
        CHECK(psi(x) <= b.upper(x) + 1e-9);
      }
    }
  }
}

TEST_CASE("three eligibility tests agree", "[canonical][property]") {
  Rng rng(405);
  for (int trial = 0; trial < 150; ++trial) {
    const auto track = trial % 2 == 0 ? Track::identity() : random_track(rng, uniform_count(rng, 2, 5));
    auto delta = random_increasing_delta(rng, track, 0.9);
    DiagonalSpec spec = [&] {
      try {
        return make_diagonal(delta, track);
      } catch (const DiagonalConditionError&) {
        return make_diagonal(PLFunction::sample(fig2_delta, 9), Track::identity());
      }
    }();
    if (!existence_check(spec).exists) continue;
    const auto psi = rng() % 2 == 0 ? random_eligible_psi(rng, spec) : random_ineligible_psi(rng, spec);
    const bool by_quadruplet = quadruplet(spec, psi).eligible;
    CHECK(by_quadruplet == eligibility_by_variation(spec, psi).eligible);
    CHECK(by_quadruplet == brute_eligible(spec.delta(), spec.track(), psi, kUserSlack));
  }
}
