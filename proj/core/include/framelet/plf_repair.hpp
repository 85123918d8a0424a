#pragma once

// Polyline stage of the design: sample the target on πk/n, lift zero runs,
// keep the pointwise sub-QMF inequality at the nodes, and break symmetric root
// pairs and cycles by small node perturbations.

#include <limits>

#include "framelet/periodic.hpp"
#include "framelet/target.hpp"

namespace framelet {

/// Node values at or below this magnitude count as roots.
inline constexpr double kNodeZeroTol = 1e-9;

/// Index of the node ξ_k + π on an equispaced polyline with 2n nodes.
std::size_t partner_index(std::size_t k, std::size_t two_n);

/// Polyline through f(πk/n), k = 0..2n−1.
///
/// Node 0 is set to exactly 1 and values within kNodeZeroTol of zero snap to 0.
/// A node pair whose squares exceed 1 by rounding (at most 1e-9 after the
/// admissibility check) is projected back onto the unit circle, so the node
/// inequality holds exactly in floating point. Throws AdmissibilityError when
/// f is not admissible.
PiecewiseLinearPeriodic sample_interpolate(const TargetFunction& f, int n);

/// Lifts every maximal run of zero nodes with nonzero flanks: a plateau at
/// γ₁ = min{ε/12, flanks} (positive flanks), at γ₂ = max{−ε/12, flanks}
/// (negative flanks), or a ramp from γ₃ = ±min{ε/12, |left|} to
/// γ₄ = ∓min{ε/12, |right|} (flanks of opposite sign). Single zero nodes between
/// flanks of opposite sign are already a crossing and stay unchanged.
PiecewiseLinearPeriodic repair_zero_segments(const PiecewiseLinearPeriodic& f1, double epsilon);

/// Restores |v_k|² + |v_{N(k)}|² ≤ 1 after `modified` was derived from
/// `reference` by changing some node values.
///
/// For a changed node k, its partner is shrunk to √(1 − v_k²) (sign kept).
/// Node 0 is pinned to its reference value; the node at π (partner of node 0)
/// is clamped to 0, and the zero run around it in `reference` is reshaped so
/// the polyline crosses zero there instead of touching it. An isolated zero at
/// π between flanks of equal sign stays a touching root.
PiecewiseLinearPeriodic enforce_node_constraint(const PiecewiseLinearPeriodic& reference,
                                                const PiecewiseLinearPeriodic& modified, double epsilon);

/// Perturbs one root of each symmetric pair and of each nontrivial cycle by
/// ±ε/12 at the left node of its segment (halved every 8 passes, at most 64
/// passes), then re-enforces the node inequality. The cumulative change of any
/// single node never exceeds ε/12. Throws ConstructionError when the loop does
/// not settle.
PiecewiseLinearPeriodic remove_symmetric_and_cycles(const PiecewiseLinearPeriodic& f, double epsilon);

/// Node inequality; by convexity of the symbol between nodes this is the
/// inequality on the whole circle. A 16-points-per-segment spot check must agree.
bool verify_node_inequality(const PiecewiseLinearPeriodic& f3);

struct SafetyMargins {
  double a = std::numeric_limits<double>::infinity();
  double rho = std::numeric_limits<double>::infinity();
};

/// a: smallest nonzero |slope|. ρ: one third of the smallest torus distance
/// from the roots R, and from their doubles 2R, to R + π (the pair 2π ≡ π + π
/// of the root at π is ignored). Both infinite without roots.
SafetyMargins safety_margins(const PiecewiseLinearPeriodic& f3);

struct DesignCertificate {
  double epsilon = 0.0;
  int n = 0;
  int j = 0;
  double err_f_f1 = 0.0;   ///< sup over the verification grid
  double err_f1_f2 = 0.0;  ///< exact (node maximum)
  double err_f2_f3 = 0.0;  ///< exact (node maximum)
  double err_f3_h = 0.0;   ///< sup over the verification grid
  double err_f_h = 0.0;    ///< direct sup over the verification grid
  double a = std::numeric_limits<double>::infinity();
  double rho = std::numeric_limits<double>::infinity();
  /// err_f3_h < a·ρ.
  bool margin_certified = false;
  int grid_size = 0;

  double stage_sum() const noexcept { return err_f_f1 + err_f1_f2 + err_f2_f3 + err_f3_h; }
};

/// sup_g |f(ξ_g) − p(ξ_g)| on the grid 2πg/G.
double sup_distance(const TargetFunction& f, const PiecewiseLinearPeriodic& p, int grid_size);

/// Node maximum of |p − q| for polylines with identical nodes (exact sup).
double sup_distance(const PiecewiseLinearPeriodic& p, const PiecewiseLinearPeriodic& q);

}  // namespace framelet
