#pragma once

// Real 2π-periodic target functions for the mask design.

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace framelet {

class TargetFunction {
 public:
  TargetFunction(std::function<double(double)> eval, std::string description);

  double operator()(double xi) const { return eval_(xi); }
  const std::string& description() const noexcept { return description_; }

  /// Throws AdmissibilityError naming the violated condition:
  ///   f(0) = 1 within 1e-12, and
  ///   f(ξ)² + f(ξ+π)² ≤ 1 + 1e-9 at the points 2πg/G.
  void check_admissible(int grid_size = 4096) const;

 private:
  std::function<double(double)> eval_;
  std::string description_;
};

/// raised-cosine, zero-plateau, interior-roots, triple-cosine, constant-one.
std::vector<std::string> builtin_target_names();

/// Throws std::invalid_argument for an unknown name.
TargetFunction builtin_target(const std::string& name);

/// f(ξ) = Σ_k a[k] cos(kξ).
TargetFunction cosine_series_target(std::vector<double> a);

/// Periodic linear interpolation of (angle, value) samples; angles are
/// reduced mod 2π and must be distinct.
TargetFunction samples_target(std::vector<std::pair<double, double>> samples);

}  // namespace framelet
