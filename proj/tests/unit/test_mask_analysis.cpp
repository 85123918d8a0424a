#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "framelet/error.hpp"
#include "framelet/mask_analysis.hpp"
#include "generators.hpp"

using namespace framelet;
using namespace framelet::testing;

namespace {

const TrigPoly kHaar(0, {0.5, 0.5});
const TrigPoly kHat(-1, {0.25, 0.5, 0.25});
// cos²(3ξ/2) = 1/2 + (e^{3iξ} + e^{−3iξ})/4.
const TrigPoly kTriple(-3, {0.25, 0, 0, 0.5, 0, 0, 0.25});
// cos²ξ.
const TrigPoly kCosSq(-2, {0.25, 0, 0.5, 0, 0.25});

bool contains_cycle(const std::vector<Cycle>& cs, std::vector<double> want) {
  std::sort(want.begin(), want.end());
  return std::any_of(cs.begin(), cs.end(), [&](const Cycle& c) {
    if (c.betas.size() != want.size()) return false;
    auto b = c.betas;
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (torus_gap(b[i], want[i]) > 1e-7) return false;
    }
    return true;
  });
}

}  // namespace

TEST_CASE("unit_circle_roots examples") {
  const auto haar = unit_circle_roots(kHaar);
  REQUIRE(haar.size() == 1);
  CHECK(haar[0].angle == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(haar[0].multiplicity == 1);

  const auto hat = unit_circle_roots(kHat);
  REQUIRE(hat.size() == 1);
  CHECK(hat[0].angle == doctest::Approx(kPi).epsilon(1e-7));
  CHECK(hat[0].multiplicity == 2);

  CHECK(unit_circle_roots(TrigPoly::constant(1.0)).empty());
  CHECK_THROWS_AS(unit_circle_roots(TrigPoly::constant(0.0)), std::invalid_argument);
  // Off-circle roots are ignored: 1 − z/2 vanishes at z = 2.
  CHECK(unit_circle_roots(TrigPoly(0, {1.0, -0.5})).empty());
}

TEST_CASE("symmetric_pairs examples") {
  const std::vector<double> a{kPi / 2, 3 * kPi / 2};
  CHECK(symmetric_pairs(a).size() == 1);
  const std::vector<double> b{kPi};
  CHECK(symmetric_pairs(b).empty());
  const std::vector<double> c{kPi / 3, kPi, 5 * kPi / 3};
  CHECK(symmetric_pairs(c).empty());
}

TEST_CASE("property: symmetric_pairs is order and 2pi-shift invariant") {
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> r;
    const int count = uniform_int(1, 6);
    for (int i = 0; i < count; ++i) {
      r.push_back(uniform(0, kTwoPi));
      if (uniform(0, 1) < 0.4) r.push_back(wrap_angle(r.back() + kPi));
    }
    const auto base = symmetric_pairs(r).size();
    CHECK((base > 0) == has_symmetric_pair(r, 1e-7));
    auto shuffled = r;
    std::shuffle(shuffled.begin(), shuffled.end(), rng());
    for (auto& x : shuffled) x += kTwoPi * uniform_int(-3, 3);
    CHECK(symmetric_pairs(shuffled).size() == base);
  }
}

TEST_CASE("find_cycles examples") {
  const auto tri = find_cycles(kTriple);
  CHECK(contains_cycle(tri, {2 * kPi / 3, 4 * kPi / 3}));
  CHECK(contains_cycle(tri, {0.0}));
  for (const auto& c : tri) {
    if (c.betas.size() == 2) {
      CHECK(c.n == 2);
      CHECK(c.m == 1);
      CHECK_FALSE(c.trivial);
    } else {
      CHECK(c.trivial);
    }
  }
  CHECK(tri.size() == 2);

  const auto haar = find_cycles(kHaar);
  REQUIRE(haar.size() == 1);
  CHECK(haar[0].trivial);

  CHECK(find_cycles(TrigPoly(0, {1.0, -0.25})).empty());
}

TEST_CASE("stability_verdict examples") {
  const auto haar = stability_verdict(kHaar);
  CHECK(haar.stable);
  CHECK(haar.verdict == Verdict::stable);
  CHECK(std::fabs(haar.subqmf_margin) < 1e-9);

  const auto tri = stability_verdict(kTriple);
  CHECK_FALSE(tri.stable);
  CHECK(tri.verdict == Verdict::unstable);
  CHECK(has_nontrivial_cycle(tri.cycles));

  const auto cs = stability_verdict(kCosSq);
  CHECK_FALSE(cs.stable);
  REQUIRE(cs.symmetric_pairs.size() == 1);
  CHECK(cs.symmetric_pairs[0].first == doctest::Approx(kPi / 2).epsilon(1e-7));
  CHECK(cs.symmetric_pairs[0].second == doctest::Approx(3 * kPi / 2).epsilon(1e-7));

  CHECK_THROWS_AS(stability_verdict(TrigPoly(0, {0.5, 0.25})), AdmissibilityError);
  CHECK(to_string(Verdict::unknown) == "unknown");
}

TEST_CASE("property: roots of products are the union of the factors' roots") {
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> ta, tb;
    for (int i = uniform_int(1, 4); i > 0; --i) ta.push_back(uniform(0.3, kTwoPi - 0.3));
    for (int i = uniform_int(1, 4); i > 0; --i) tb.push_back(uniform(0.3, kTwoPi - 0.3));
    // Keep the roots apart so clustering is unambiguous.
    auto all = ta;
    all.insert(all.end(), tb.begin(), tb.end());
    std::sort(all.begin(), all.end());
    bool separated = true;
    for (std::size_t i = 1; i < all.size(); ++i) separated = separated && all[i] - all[i - 1] > 1e-2;
    if (!separated) continue;
    // Off-circle factors must not contribute.
    const TrigPoly off(0, {1.0, cplx(0.3, 0.2)});
    const TrigPoly p = poly_with_roots(ta) * off;
    const TrigPoly q = poly_with_roots(tb);
    const auto roots = root_angles(unit_circle_roots(p * q));
    REQUIRE(roots.size() == all.size());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(roots[i] == doctest::Approx(all[i]).epsilon(1e-9));
    for (double r : roots) CHECK(std::abs((p * q)(r)) < 1e-7);
  }
}

TEST_CASE("property: repeated roots get their multiplicity") {
  for (int trial = 0; trial < 20; ++trial) {
    const double t = uniform(0.5, 5.5);
    const int mult = uniform_int(1, 3);
    const auto roots = unit_circle_roots(poly_with_roots(std::vector<double>(static_cast<std::size_t>(mult), t)));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == mult);
    CHECK(roots[0].angle == doctest::Approx(t).epsilon(1e-6));
  }
}

TEST_CASE("property: reported cycles are closed under doubling") {
  for (int trial = 0; trial < 30; ++trial) {
    // Plant the cycle with denominator 2^n − 1 at a random offset.
    const int n = uniform_int(2, 4);
    const int m = uniform_int(1, (1 << n) - 2);
    std::vector<double> thetas;
    double beta = kTwoPi * m / ((1 << n) - 1);
    for (int i = 0; i < n; ++i) {
      thetas.push_back(wrap_angle(beta + kPi));
      beta = wrap_angle(2 * beta);
    }
    thetas.push_back(kPi);
    const auto cycles = find_cycles(poly_with_roots(thetas));
    CHECK(has_nontrivial_cycle(cycles));
    for (const auto& c : cycles) {
      const std::size_t len = c.betas.size();
      for (std::size_t i = 0; i < len; ++i) {
        CHECK(torus_gap(2 * c.betas[i], c.betas[(i + 1) % len]) < 1e-7);
      }
      // Minimal: no element repeats.
      for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t k = i + 1; k < len; ++k) CHECK(torus_gap(c.betas[i], c.betas[k]) > 1e-7);
      }
    }
  }
}
