#include "framelet/target.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "framelet/error.hpp"
#include "framelet/periodic.hpp"

namespace framelet {

TargetFunction::TargetFunction(std::function<double(double)> eval, std::string description)
    : eval_(std::move(eval)), description_(std::move(description)) {
  if (!eval_) throw std::invalid_argument("TargetFunction: empty evaluator");
}

void TargetFunction::check_admissible(int grid_size) const {
  const double at0 = eval_(0.0);
  if (!(std::fabs(at0 - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "target '" << description_ << "' violates f(0) = 1 (f(0) = " << at0 << ")";
    throw AdmissibilityError(os.str());
  }
  const TorusGrid grid(grid_size);
  for (int g = 0; g < grid.size(); ++g) {
    const double xi = grid.point(g);
    const double a = eval_(xi);
    const double b = eval_(xi + kPi);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw AdmissibilityError("target '" + description_ + "' is not finite at xi = " + std::to_string(xi));
    }
    const double s = a * a + b * b;
    if (s > 1.0 + 1e-9) {
      std::ostringstream os;
      os.precision(17);
      os << "target '" << description_ << "' violates |f(xi)|^2 + |f(xi+pi)|^2 <= 1 at xi = " << xi
         << " (value " << s << ")";
      throw AdmissibilityError(os.str());
    }
  }
}

std::vector<std::string> builtin_target_names() {
  return {"raised-cosine", "zero-plateau", "interior-roots", "triple-cosine", "constant-one"};
}

TargetFunction builtin_target(const std::string& name) {
  if (name == "raised-cosine") {
    return {[](double x) { return std::pow(std::cos(0.5 * x), 2); }, "raised-cosine cos^2(xi/2)"};
  }
  if (name == "zero-plateau") {
    // cos²ξ on |ξ| ≤ π/2, identically zero on the half of the circle around π.
    return {[](double x) {
              const double r = std::remainder(x, kTwoPi);
              return std::fabs(r) <= 0.5 * kPi ? std::pow(std::cos(r), 2) : 0.0;
            },
            "zero-plateau cos^2(xi) on |xi|<=pi/2, 0 elsewhere"};
  }
  if (name == "interior-roots") {
    return {[](double x) { return std::pow(std::cos(0.5 * x), 2) * std::cos(2.0 * x); },
            "interior-roots cos^2(xi/2) cos(2 xi)"};
  }
  if (name == "triple-cosine") {
    return {[](double x) { return std::pow(std::cos(1.5 * x), 2); }, "triple-cosine cos^2(3 xi/2)"};
  }
  if (name == "constant-one") {
    return {[](double) { return 1.0; }, "constant-one"};
  }
  throw std::invalid_argument("unknown target '" + name + "'");
}

TargetFunction cosine_series_target(std::vector<double> a) {
  if (a.empty()) throw std::invalid_argument("cosine series: no coefficients");
  std::ostringstream os;
  os << "cosine series (" << a.size() << " terms)";
  auto coeffs = std::make_shared<const std::vector<double>>(std::move(a));
  return {[coeffs](double x) {
            double s = 0.0;
            for (std::size_t k = 0; k < coeffs->size(); ++k) s += (*coeffs)[k] * std::cos(static_cast<double>(k) * x);
            return s;
          },
          os.str()};
}

TargetFunction samples_target(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("samples target: need at least 2 samples");
  for (auto& s : samples) s.first = wrap_angle(s.first);
  std::sort(samples.begin(), samples.end());
  std::vector<double> nodes, values;
  for (const auto& [x, v] : samples) {
    if (!nodes.empty() && x == nodes.back()) {
      throw std::invalid_argument("samples target: duplicate angle " + std::to_string(x));
    }
    nodes.push_back(x);
    values.push_back(v);
  }
  auto pl = std::make_shared<const PiecewiseLinearPeriodic>(std::move(nodes), std::move(values));
  std::ostringstream os;
  os << "sampled target (" << pl->size() << " samples)";
  return {[pl](double x) { return (*pl)(x); }, os.str()};
}

}  // namespace framelet
