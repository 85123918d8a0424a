#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "framelet/design.hpp"
#include "framelet/error.hpp"
#include "framelet/uep_complete.hpp"
#include "generators.hpp"

using namespace framelet;
using namespace framelet::testing;

namespace {

const TrigPoly kHaar(0, {0.5, 0.5});
const TrigPoly kHat(-1, {0.25, 0.5, 0.25});

// Winding number of b(e^{iθ}) around 0; zero iff b has no zeros in |u| < 1
// (given none on the circle).
int winding(const TrigPoly& b) {
  const int n = 1 << 14;
  double total = 0.0;
  cplx prev = b(0.0);
  for (int g = 1; g <= n; ++g) {
    const cplx cur = b(kTwoPi * g / n);
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

// Σ_r m_r(ξ)·conj(m_r(ξ + π)) and Σ_r |m_r(ξ)|², pointwise.
std::pair<double, double> uep_rows(const MaskBundle& b, double x) {
  cplx row2 = 0.0;
  double row1 = 0.0;
  for (const auto& m : b.all()) {
    const cplx a = direct_eval(m, x);
    row1 += std::norm(a);
    row2 += a * std::conj(direct_eval(m, x + kPi));
  }
  return {std::fabs(row1 - 1.0), std::abs(row2)};
}

}  // namespace

TEST_CASE("deficiency examples") {
  CHECK(deficiency(kHaar).is_zero(1e-15));
  // 1 − (3/4 + cos(2ξ)/4) = 1/4 − cos(2ξ)/4.
  const auto a = deficiency(kHat);
  CHECK(std::abs(a.coeff(0) - 0.25) < 1e-15);
  CHECK(std::abs(a.coeff(2) + 0.125) < 1e-15);
  CHECK(std::abs(a.coeff(-2) + 0.125) < 1e-15);
  for (double x : random_angles(20)) {
    CHECK(std::abs(a(x) - 0.5 * std::pow(std::sin(x), 2)) < 1e-14);
  }
  CHECK_THROWS_AS(deficiency(TrigPoly::constant(1.0)), AdmissibilityError);
}

TEST_CASE("fejer_riesz examples") {
  // (2 − u − 1/u)/8 = |1 − u|²/8.
  const TrigPoly p(-1, {-0.125, 0.25, -0.125});
  const auto f = fejer_riesz(p);
  const double s = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(std::abs(f.b.coeff(0) - s) < 1e-12);
  CHECK(std::abs(f.b.coeff(1) + s) < 1e-12);
  CHECK(f.residual < 1e-12);
  CHECK_FALSE(f.degraded);

  const auto one = fejer_riesz(TrigPoly::constant(1.0));
  CHECK(std::abs(one.b.coeff(0) - 1.0) < 1e-15);
  CHECK(one.b.trimmed(1e-15).coeffs().size() == 1);

  CHECK(fejer_riesz(TrigPoly::constant(0.0)).b.is_zero());

  CHECK_THROWS_AS(fejer_riesz(TrigPoly(-1, {0.5, 0.0, 0.5})), AdmissibilityError);
}

TEST_CASE("property: fejer_riesz round trip on strictly positive P") {
  for (int trial = 0; trial < 30; ++trial) {
    const int deg = uniform_int(1, 30);
    const TrigPoly q = random_poly(0, deg + 1);
    const TrigPoly p = abs_squared(q) + TrigPoly::constant(uniform(0.01, 0.5));
    const auto f = fejer_riesz(p);
    CHECK(f.b.m_min() >= 0);
    CHECK(f.b.m_max() <= deg);
    CHECK(f.residual < 1e-8);
    CHECK(f.coeff_residual < 1e-9 * p.l1_norm());
    for (double x : random_angles(20)) CHECK(std::fabs(std::norm(f.b(x)) - p(x).real()) < 1e-8 * p.l1_norm());
    CHECK(f.b.coeff(0).real() > 0);
    CHECK(f.b.coeff(0).imag() == 0.0);
    CHECK(winding(f.b) == 0);
  }
}

TEST_CASE("property: fejer_riesz with separated zeros on the circle") {
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> th;
    for (int i = uniform_int(1, 3); i > 0; --i) {
      double t = 0.0;
      do {
        t = uniform(0.2, kTwoPi - 0.2);
      } while (std::any_of(th.begin(), th.end(), [&](double s) { return torus_gap(s, t) < 0.1; }));
      th.push_back(t);
    }
    const TrigPoly q = poly_with_roots(th) * random_poly(0, uniform_int(1, 6));
    const TrigPoly p = abs_squared(q);
    const auto f = fejer_riesz(p);
    CHECK(f.residual < 1e-8 * p.l1_norm());
    for (double t : th) CHECK(std::abs(f.b(t)) < 1e-5);
  }
}

TEST_CASE("property: fejer_riesz with clustered zeros on the circle") {
  // Three zeros within 0.06 behave like a zero of order six, so accuracy is
  // limited by conditioning (worst seen about 2e-4 relative); degraded has to
  // say so.
  for (int trial = 0; trial < 40; ++trial) {
    const double t = uniform(0.5, 5.5);
    const std::vector<double> th{t, t + uniform(1e-4, 0.02), t + uniform(0.02, 0.06)};
    const TrigPoly p = abs_squared(poly_with_roots(th) * random_poly(0, uniform_int(1, 4)));
    const auto f = fejer_riesz(p);
    CHECK(f.residual < 1e-3 * p.l1_norm());
    CHECK(f.degraded == (f.residual > 1e-8));
    CHECK(f.b.m_max() <= p.degree());
  }
}

TEST_CASE("wavelet_masks on Haar and hat") {
  const auto haar = wavelet_masks(kHaar);
  REQUIRE(haar.q() == 1);
  // e^{iξ}(1 − e^{−iξ})/2 = (e^{iξ} − 1)/2.
  CHECK(std::abs(haar.wavelet_masks[0].coeff(0) + 0.5) < 1e-16);
  CHECK(std::abs(haar.wavelet_masks[0].coeff(1) - 0.5) < 1e-16);
  const auto rh = verify_uep(haar);
  CHECK(rh.coeff_max() < 1e-12);
  CHECK(rh.grid_max() < 1e-12);

  const auto hat = wavelet_masks(kHat);
  REQUIRE(hat.q() == 3);
  const auto rt = verify_uep(hat);
  CHECK(rt.coeff_max() < 1e-9);
  CHECK(rt.grid_max() < 1e-9);
  for (double x : random_angles(100)) {
    const auto [r1, r2] = uep_rows(hat, x);
    CHECK(r1 < 1e-9);
    CHECK(r2 < 1e-9);
  }
  CHECK_FALSE(hat.provenance.empty());
  CHECK_THROWS_AS(wavelet_masks(TrigPoly(0, {0.4, 0.4})), AdmissibilityError);
}

TEST_CASE("verify_uep detects corrupted bundles") {
  auto haar = wavelet_masks(kHaar);
  haar.wavelet_masks[0] = TrigPoly::constant(0.0);
  // Row 1 misses |m0(ξ + π)|², whose maximum is 1.
  CHECK(verify_uep(haar, TorusGrid(64)).row1_grid == doctest::Approx(1.0));

  MaskBundle bare;
  bare.m0 = kHat;
  // Row 1 is |cos⁴(ξ/2) − 1|, which reaches 1 at π.
  CHECK(verify_uep(bare, TorusGrid(64)).row1_grid == doctest::Approx(1.0));
  bare.wavelet_masks.push_back(TrigPoly::monomial(1) * half_shift(kHat).conj_reflect());
  // Now only A² = sin²ξ/2 is missing.
  CHECK(verify_uep(bare, TorusGrid(64)).row1_grid == doctest::Approx(0.5));
  CHECK(verify_uep(bare, TorusGrid(64)).row2_grid < 1e-15);
  CHECK_THROWS_AS(verify_uep(bare, TorusGrid(63)), std::invalid_argument);
}

TEST_CASE("property: the m1 term cancels the m0 cross term exactly") {
  for (int trial = 0; trial < 30; ++trial) {
    const TrigPoly m0 = random_poly(uniform_int(-5, 0), uniform_int(1, 10));
    const TrigPoly m1 = TrigPoly::monomial(1) * half_shift(m0).conj_reflect();
    const double scale = m0.l1_norm() * m0.l1_norm();
    for (double x : random_angles(10)) {
      const cplx cross = m0(x) * std::conj(m0(x + kPi)) + m1(x) * std::conj(m1(x + kPi));
      CHECK(std::abs(cross) < 1e-13 * scale);
    }
  }
}

TEST_CASE("property: completion of random sub-QMF masks") {
  for (int trial = 0; trial < 15; ++trial) {
    // A positive mask scaled so the symbol stays below 1 and m0(0) = 1 holds
    // after mixing with the Haar-type factor (1 + e^{iξ})/2.
    const int deg = uniform_int(0, 6);
    std::vector<cplx> c(static_cast<std::size_t>(deg + 1));
    double total = 0.0;
    for (auto& v : c) {
      v = uniform(0.0, 1.0);
      total += v.real();
    }
    for (auto& v : c) v /= total;
    const TrigPoly m0 = kHaar * TrigPoly(-deg / 2, c);
    const auto bundle = wavelet_masks(m0);
    const auto r = verify_uep(bundle);
    CHECK(r.coeff_max() < 1e-9);
    for (double x : random_angles(20)) {
      const auto [r1, r2] = uep_rows(bundle, x);
      CHECK(r1 < 1e-9);
      CHECK(r2 < 1e-9);
    }
  }
}

TEST_CASE("designed masks complete to UEP bundles") {
  for (const char* name : {"raised-cosine", "zero-plateau", "interior-roots"}) {
    const auto res = design_mask({builtin_target(name), 0.2, std::nullopt, 65536, std::nullopt});
    const auto bundle = wavelet_masks(res.mask);
    CHECK(bundle.q() <= 3);
    CHECK(verify_uep(bundle).coeff_max() < 1e-9);
  }
}
