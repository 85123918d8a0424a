#pragma once

// 2π-periodic functions: trigonometric polynomials in Laurent form and
// piecewise-linear polylines on the torus.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace framelet {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2π).
double wrap_angle(double xi);

/// Distance between two angles on the circle, in [0, π].
double torus_distance(double a, double b);

/// p(ξ) = Σ_{m=m_min}^{m_max} c_m e^{imξ}.
///
/// The coefficient vector is never empty; the zero polynomial is {c_0 = 0}.
/// Values are immutable after construction.
class TrigPoly {
 public:
  TrigPoly();
  TrigPoly(int m_min, std::vector<cplx> coeffs);

  static TrigPoly constant(cplx c);
  static TrigPoly monomial(int m, cplx c = 1.0);

  int m_min() const noexcept { return m_min_; }
  int m_max() const noexcept { return m_min_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }

  /// c_m, zero outside [m_min, m_max].
  cplx coeff(int m) const noexcept;

  /// max(|m_min|, |m_max|); the Bernstein degree.
  int degree() const noexcept;

  bool is_zero(double tol = 0.0) const noexcept;

  /// Ascending-exponent summation.
  cplx operator()(double xi) const;

  /// Drops leading/trailing coefficients with |c| <= tol (keeps at least one).
  TrigPoly trimmed(double tol = 0.0) const;

  /// d^k/dξ^k.
  TrigPoly derivative(int order = 1) const;

  /// The polynomial whose values are conj(p(ξ)): c'_m = conj(c_{-m}).
  TrigPoly conj_reflect() const;

  /// Re p(ξ) as a trigonometric polynomial.
  TrigPoly real_part() const;

  /// p(kξ).
  TrigPoly dilated(int factor) const;

  /// Inverse of dilated(): requires every nonzero exponent to be a multiple of factor.
  TrigPoly compressed(int factor, double tol = 0.0) const;

  double l1_norm() const noexcept;
  double max_abs_coeff() const noexcept;

  /// max_m |c_m − conj(c_{−m})|; zero for real-valued polynomials.
  double hermitian_defect() const noexcept;

  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(cplx s, const TrigPoly& p);
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) = default;

 private:
  int m_min_ = 0;
  std::vector<cplx> coeffs_;
};

cplx eval_trig(const TrigPoly& p, double xi);

/// q(ξ) = p(ξ + π).
TrigPoly half_shift(const TrigPoly& p);

/// |p(ξ)|² as an exact trigonometric polynomial.
TrigPoly abs_squared(const TrigPoly& p);

/// S(ξ) = |p(ξ)|² + |p(ξ + π)|². Only even exponents are populated.
TrigPoly subqmf_symbol(const TrigPoly& p);

/// Uniform grid ξ_g = 2πg/G on the torus.
class TorusGrid {
 public:
  explicit TorusGrid(int size);

  /// max(4096, 64·degree).
  static TorusGrid for_degree(int degree);

  int size() const noexcept { return size_; }
  double point(int g) const noexcept { return kTwoPi * g / size_; }

 private:
  int size_;
};

int default_grid_size(int degree);

/// p(ξ_g) for every grid point, by FFT. Exact folding is used when the
/// exponent range exceeds the grid size.
std::vector<cplx> eval_on_grid(const TrigPoly& p, const TorusGrid& grid);

struct Extremum {
  double min;
  double max;
  /// Rigorous upper bound for sup_ξ Re p(ξ) (not just over the grid).
  double certified_sup;
};

/// Grid min/max of Re p and a certified global upper bound.
///
/// The bound starts from the grid and refines cells whose Taylor bound
/// (exact quadratic part plus the Bernstein remainder D³·M·h³/6) exceeds the
/// best observed value. Requires G >= 4·deg.
Extremum grid_extremum(const TrigPoly& p, const TorusGrid& grid);

double max_imag_on_grid(const TrigPoly& p, const TorusGrid& grid);

/// Throws AdmissibilityError when the maximum imaginary part on the grid
/// reaches 1e-10.
void require_real_valued(const TrigPoly& p, const TorusGrid& grid, std::string_view what);

/// Polyline through (nodes[k], values[k]) on the torus, wrapping from the last
/// node to nodes[0] + 2π.
class PiecewiseLinearPeriodic {
 public:
  PiecewiseLinearPeriodic(std::vector<double> nodes, std::vector<double> values);

  /// Nodes πk/n, k = 0..2n−1, for 2n = values.size().
  static PiecewiseLinearPeriodic equispaced(std::vector<double> values);

  double operator()(double xi) const;

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }

  PiecewiseLinearPeriodic with_values(std::vector<double> values) const;

  /// Slope of segment k (from node k to node k+1, wrapping).
  double slope(std::size_t k) const;
  /// Length of segment k.
  double segment_length(std::size_t k) const;

  /// True when two consecutive nodes are both (near) zero.
  bool has_zero_segment(double zero_tol) const;

  /// Sorted roots: zero nodes (|v| <= zero_tol) and interior sign changes.
  /// Throws ConstructionError when a zero segment exists.
  std::vector<double> roots(double zero_tol) const;

  friend bool operator==(const PiecewiseLinearPeriodic&, const PiecewiseLinearPeriodic&) = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
};

}  // namespace framelet
