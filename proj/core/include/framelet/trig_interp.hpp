#pragma once

// Interpolation of a polyline by the degree-(2j−1) trigonometric polynomial
// H_j with H_j(πk/j) = f₃(πk/j) and H_j′(πk/j) = 0, and its filter taps.

#include <functional>
#include <vector>

#include "framelet/periodic.hpp"
#include "framelet/plf_repair.hpp"

namespace framelet {

/// t_k^j(ξ) = (sin jξ / (2j sin((ξ − πk/j)/2)))², equal to 1 at its own node.
double kernel_t(int j, int k, double xi);

/// f̃(m) = (1/2j) Σ_k s_k e^{−imπk/j} for m = −(2j−1)..(2j−1); index m + 2j − 1.
std::vector<cplx> inverse_dft(const std::vector<double>& samples);

/// Same transform by direct summation (oracle for the FFT route).
std::vector<cplx> inverse_dft_direct(const std::vector<double>& samples);

struct FilterCoeffs {
  int j = 0;
  /// c_m for m = −(2j−1)..(2j−1); conjugate-symmetric for real samples.
  std::vector<cplx> taps;

  int m_min() const noexcept { return -(2 * j - 1); }
  cplx tap(int m) const { return taps.at(static_cast<std::size_t>(m - m_min())); }
  TrigPoly mask() const { return TrigPoly(m_min(), taps); }
};

/// c_m = (1 − |m|/2j)·f̃₃(m) from the samples f₃(πk/j). Fails with
/// ConstructionError when the taps are not conjugate-symmetric to 1e-10; the
/// symmetry is then imposed exactly.
FilterCoeffs filter_coeffs(const PiecewiseLinearPeriodic& f3, int j);

/// Same taps from explicit samples s_k = f(πk/j), k = 0..2j−1.
FilterCoeffs filter_coeffs_from_samples(const std::vector<double>& samples);

TrigPoly interpolate_H(const PiecewiseLinearPeriodic& f3, int j);

/// Σ_k f₃(πk/j)·t_k^j(ξ), evaluated directly.
double kernel_sum(const PiecewiseLinearPeriodic& f3, int j, double xi);

/// sup_g |f₃(ξ_g) − Re H(ξ_g)| on the grid.
double sup_distance(const PiecewiseLinearPeriodic& f3, const TrigPoly& h, const TorusGrid& grid);

struct DegreeChoice {
  int j = 0;
  TrigPoly h;
  DesignCertificate certificate;
};

/// Doubles j from certificate.n until sup‖f₃ − H_j‖ on the grid
/// max(4096, 64(2j−1)) is below ε − (err_f_f1 + err_f1_f2 + err_f2_f3) and
/// stability_check(H_j) holds. Records j, the error, the grid size and whether
/// the error is also below a·ρ. Throws BudgetExhausted with the best error
/// when j would exceed j_cap.
DegreeChoice choose_degree(const PiecewiseLinearPeriodic& f3, DesignCertificate certificate,
                           const std::function<bool(const TrigPoly&)>& stability_check, int j_cap = 65536);

}  // namespace framelet
