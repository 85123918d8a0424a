#pragma once

// Discrete filter bank built from a mask bundle (circular convolution) and
// truncated frame sums for continuous test signals.

#include <cstdint>
#include <optional>
#include <vector>

#include "framelet/cascade.hpp"
#include "framelet/uep_complete.hpp"

namespace framelet {

/// One analysis level maps x (length N) to q + 1 bands of length N/2:
///   y_r[n] = √2 Σ_m conj(h_r[m]) x[(2n + m) mod N],
/// so analysis is an isometry exactly when the bundle satisfies the UEP
/// identities, and synthesis is its adjoint.
struct Subbands {
  /// details[l][r − 1] is band r ≥ 1 produced at level l.
  std::vector<std::vector<std::vector<cplx>>> details;
  /// Low band after the last level.
  std::vector<cplx> approx;

  int levels() const noexcept { return static_cast<int>(details.size()); }
  double energy() const;
};

Subbands analysis(const std::vector<cplx>& x, const MaskBundle& bundle, int levels);
Subbands analysis(const std::vector<double>& x, const MaskBundle& bundle, int levels);

/// x̂[t] = √2 Σ_r Σ_m h_r[m] u_r[(t − m) mod N], u_r = y_r upsampled by 2.
std::vector<cplx> synthesis(const Subbands& sb, const MaskBundle& bundle);

struct PrReport {
  double max_error = 0.0;  ///< max over trials of ‖x − synthesis(analysis(x))‖∞
  double uep_residual = 0.0;
  /// UEP residual ≥ 1e-6: a large error is a property of the bundle, not of
  /// the filter bank.
  bool bundle_suspect = false;
};

PrReport pr_error(const MaskBundle& bundle, int trials, int length, int levels, std::uint64_t seed = 20240601);

struct Generators {
  DyadicFunction phi;
  std::vector<DyadicFunction> psi;
};

/// φ by cascade and ψ_r = 2 Σ h_r[m] φ(2· + m) at the given level.
Generators generators(const MaskBundle& bundle, int level);

struct ParsevalSum {
  double partial = 0.0;
  double norm2 = 0.0;
};

/// Σ_{r, j, k} |⟨g, ψ_{r,j,k}⟩|² with ψ_{r,j,k}(x) = 2^{j/2} ψ_r(2^j x + k),
/// j in [j_min, j_max], and k in [k_min, k_max] when given, otherwise every k
/// whose support meets that of g. Integrals use the trapezoid rule on the
/// finer of the two grids, interpolating the other function linearly.
ParsevalSum parseval_partial(const DyadicFunction& g, const Generators& gens, int j_min, int j_max,
                             std::optional<std::pair<long long, long long>> k_range = std::nullopt);

/// Computes the generators at g's level first.
ParsevalSum parseval_partial(const DyadicFunction& g, const MaskBundle& bundle, int j_min, int j_max,
                             std::optional<std::pair<long long, long long>> k_range = std::nullopt);

}  // namespace framelet
