#pragma once

// End-to-end mask design: target → polylines f₁, f₂, f₃ → H_j.

#include <optional>

#include "framelet/mask_analysis.hpp"
#include "framelet/periodic.hpp"
#include "framelet/plf_repair.hpp"
#include "framelet/target.hpp"
#include "framelet/trig_interp.hpp"

namespace framelet {

struct DesignRequest {
  TargetFunction target;
  double epsilon = 0.1;
  /// Sampling parameter (2n nodes); chosen automatically when absent.
  std::optional<int> n;
  int j_cap = 65536;
  /// Verification grid for the target; max(4096, 16n) when absent.
  std::optional<int> grid_size;
};

struct DesignResult {
  PiecewiseLinearPeriodic f1;
  PiecewiseLinearPeriodic f2;
  PiecewiseLinearPeriodic f3;
  FilterCoeffs filter;
  TrigPoly mask;
  DesignCertificate certificate;
  StabilityReport stability;
  /// Extremum of |H|² + |H(·+π)|² with its certified bound.
  Extremum subqmf;
};

/// Smallest power of two n ≥ 4 with sup_grid|f − f₁| < ε/6, 2n ≤ 65536.
/// Throws BudgetExhausted otherwise.
int choose_sampling(const TargetFunction& f, double epsilon, std::optional<int> grid_size = std::nullopt);

/// Throws AdmissibilityError for an inadmissible target, BudgetExhausted
/// when no j ≤ j_cap meets the budget with a stable mask.
DesignResult design_mask(const DesignRequest& request);

}  // namespace framelet
