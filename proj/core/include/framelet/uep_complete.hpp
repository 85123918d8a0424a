#pragma once

// Completion of a sub-QMF refinement mask m0 to wavelet masks m_1..m_q
// (q ≤ 3) with Σ|m_r(ξ)|² = 1 and Σ m_r(ξ)·conj(m_r(ξ+π)) = 0.

#include <string>
#include <vector>

#include "framelet/periodic.hpp"

namespace framelet {

struct MaskBundle {
  TrigPoly m0;
  std::vector<TrigPoly> wavelet_masks;
  std::string provenance;

  int q() const noexcept { return static_cast<int>(wavelet_masks.size()); }
  /// m0 followed by the wavelet masks.
  std::vector<TrigPoly> all() const;
};

/// A²(ξ) = 1 − |m0(ξ)|² − |m0(ξ+π)|², exact. Throws AdmissibilityError when
/// the certified sup of the symbol exceeds 1 + 1e-9.
TrigPoly deficiency(const TrigPoly& m0);

struct SpectralFactor {
  /// Polynomial in the same variable as P, exponents 0..deg P, constant term
  /// real and positive; its zeros lie in |u| ≥ 1.
  TrigPoly b;
  /// sup over a grid of ||b|² − P|.
  double residual = 0.0;
  /// Max coefficient of |b|² − P.
  double coeff_residual = 0.0;
  /// residual > 1e-8.
  bool degraded = false;
};

/// |b(u)|² = P(u) on |u| = 1 for a nonnegative Hermitian Laurent polynomial P.
///
/// Zeros of P on the circle are located from grid minima, refined by Newton
/// and divided out; the zero-free cofactor gets a minimum-phase cepstral
/// start and is polished by Gauss–Newton on the coefficient equations.
/// Throws AdmissibilityError when P < −1e-10 somewhere on the grid.
SpectralFactor fejer_riesz(const TrigPoly& p);

/// m1 = e^{iξ}·conj(m0(ξ+π)); when A² ≢ 0 also m2 = b(2ξ)/√2 and
/// m3 = e^{iξ}·b(2ξ)/√2 with |b(w)|² = A² in w = e^{2iξ}. Zero masks are
/// dropped. Requires m0(0) = 1 within 1e-9.
MaskBundle wavelet_masks(const TrigPoly& m0);

struct UepResidual {
  double row1_grid = 0.0;   ///< sup_ξ |Σ|m_r(ξ)|² − 1|
  double row2_grid = 0.0;   ///< sup_ξ |Σ m_r(ξ) conj(m_r(ξ+π))|
  double row1_coeff = 0.0;  ///< max coefficient of Σ|m_r|² − 1
  double row2_coeff = 0.0;  ///< max coefficient of Σ m_r·conj(m_r(·+π))

  double coeff_max() const noexcept { return row1_coeff > row2_coeff ? row1_coeff : row2_coeff; }
  double grid_max() const noexcept { return row1_grid > row2_grid ? row1_grid : row2_grid; }
};

/// Grid residuals come from pointwise mask values; coefficient residuals from
/// the exact polynomial identities. The grid size must be even.
UepResidual verify_uep(const MaskBundle& bundle, const TorusGrid& grid);

/// verify_uep on the grid max(4096, 64·deg) (rounded up to even).
UepResidual verify_uep(const MaskBundle& bundle);

}  // namespace framelet
