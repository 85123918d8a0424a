#pragma once

// Unit-circle roots of masks, symmetric root pairs and cycles of the doubling
// map, and the resulting stability verdict for the integer shifts of φ.

#include <span>
#include <string>
#include <vector>

#include "framelet/periodic.hpp"

namespace framelet {

struct UnitRoot {
  double angle;  ///< in [0, 2π)
  int multiplicity;
  /// The cluster was wide for its multiplicity, or its modulus sat just
  /// outside the acceptance band. Never silently merged or dropped.
  bool ill_conditioned = false;
};

/// Roots of z^{-m_min}·m(z) with ||z| − 1| < tol, as ascending angles.
///
/// Companion-matrix eigenvalues (LAPACK zhseqr after balancing); eigenvalues
/// within 1e-5 of each other are one cluster whose size is the multiplicity.
std::vector<UnitRoot> unit_circle_roots(const TrigPoly& m, double tol = 1e-8);

std::vector<double> root_angles(std::span<const UnitRoot> roots);

struct RootPair {
  double first;
  double second;
};

/// Unordered pairs {α, α′} of the input with α′ ≡ α + π within tol.
std::vector<RootPair> symmetric_pairs(std::span<const double> roots, double tol = 1e-7);

/// A cyclic set β_1 → β_2 → … → β_n → β_1 under β ↦ 2β mod 2π, with
/// β_1 = 2πm/(2^n − 1).
struct Cycle {
  std::vector<double> betas;  ///< orbit order, starting at the smallest angle
  int n = 0;
  long long m = 0;  ///< −1 when n is too large to represent 2^n − 1
  bool trivial = false;  ///< the fixed point {0}
};

/// Cycles whose every β has β + π in the given root set (within tol).
std::vector<Cycle> cycles_from_roots(std::span<const double> roots, double tol = 1e-7);

/// Cycles of a mask: candidates are unit-circle roots shifted by π, and every
/// element must satisfy |m(β + π)| < tol.
std::vector<Cycle> find_cycles(const TrigPoly& m, double tol = 1e-7);

bool has_nontrivial_cycle(std::span<const Cycle> cycles);

enum class Verdict { stable, unstable, unknown };

std::string to_string(Verdict v);

struct StabilityReport {
  std::vector<UnitRoot> roots;
  std::vector<RootPair> symmetric_pairs;
  std::vector<Cycle> cycles;
  /// No symmetric pairs and no nontrivial cycles.
  bool stable = false;
  /// Some root was ill-conditioned.
  bool condition_flag = false;
  /// unstable if !stable; unknown if stable but condition_flag is set.
  Verdict verdict = Verdict::unknown;
  /// 1 − certified sup of |m|² + |m(·+π)|².
  double subqmf_margin = 0.0;
};

/// Requires |m(0) − 1| ≤ 1e-9 (AdmissibilityError otherwise).
StabilityReport stability_verdict(const TrigPoly& m, double root_tol = 1e-8, double match_tol = 1e-7);

}  // namespace framelet
