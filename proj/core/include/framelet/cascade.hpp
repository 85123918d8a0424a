#pragma once

// Refinable function and wavelet generators on dyadic grids, with the
// conventions φ̂(ξ) = ∫φ(x)e^{−iξx}dx and φ(x) = 2 Σ_m c_m φ(2x + m).

#include <vector>

#include "framelet/periodic.hpp"

namespace framelet {

/// Samples at x_i = lo + i·2^{−level}, i = 0..(hi − lo)·2^level; zero outside.
struct DyadicFunction {
  int level = 0;
  int lo = 0;
  int hi = 0;
  std::vector<cplx> samples;

  double step() const noexcept;
  double x(std::size_t i) const noexcept { return lo + static_cast<double>(i) * step(); }
  std::size_t expected_size() const noexcept;

  /// Linear interpolation between samples, zero outside [lo, hi].
  cplx operator()(double x) const;
};

/// Samples of a real function on [lo, hi] at the given level.
template <class F>
DyadicFunction sample_dyadic(F&& f, int level, int lo, int hi) {
  DyadicFunction d{level, lo, hi, {}};
  d.samples.resize(d.expected_size());
  for (std::size_t i = 0; i < d.samples.size(); ++i) d.samples[i] = f(d.x(i));
  return d;
}

struct ProductResult {
  std::vector<cplx> values;  ///< Π_{j=1..J} m0(ξ/2^j)
  std::vector<double> delta;  ///< |product to depth J + 8 − product to depth J|
};

/// Truncated infinite product for φ̂. Requires m0(0) = 1 within 1e-9.
ProductResult fourier_product(const TrigPoly& m0, const std::vector<double>& xis, int depth);

struct CascadeResult {
  DyadicFunction phi;
  int iterations = 0;
  bool converged = false;
};

/// Cascade iteration v ← 2 Σ_m c_m v(2x + m) on [−m_max, −m_min] at the given
/// level, seeded with the unit hat centred at floor of the support midpoint. Stops at a fixed
/// point (sup change < 1e-10) or after max_iterations sweeps. Throws
/// ConstructionError when the iterates exceed 1e6 (unstable cascade) and
/// std::invalid_argument unless Σ c_m = 1 within 1e-9.
CascadeResult cascade_time(const TrigPoly& m0, int level, int max_iterations = 80);

/// ψ(x) = 2 Σ_m h_m φ(2x + m) on the smallest integer interval holding it.
DyadicFunction wavelet_time(const DyadicFunction& phi, const TrigPoly& mr);

/// sup_i |φ(x_i) − 2 Σ_m c_m φ(2x_i + m)|, skipping points within 2·2^{−level}
/// of a jump (neighbouring samples differing by more than 0.1·sup|φ|).
double refinement_residual(const DyadicFunction& phi, const TrigPoly& m0);

/// Trapezoid rule for ∫φ.
cplx integral(const DyadicFunction& phi);

/// Trapezoid rule for ∫φ(x)e^{−iξx}dx.
std::vector<cplx> fourier_transform(const DyadicFunction& phi, const std::vector<double>& xis);

}  // namespace framelet
