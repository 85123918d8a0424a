#include "framelet/plf_repair.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "framelet/error.hpp"
#include "framelet/mask_analysis.hpp"

namespace framelet {
namespace {

constexpr double kRootMatchTol = 1e-9;
constexpr int kMaxPasses = 64;

std::size_t half_count(const PiecewiseLinearPeriodic& f) {
  if (f.size() % 2 != 0) throw std::invalid_argument("polyline needs an even number of nodes (partner pairs)");
  return f.size() / 2;
}

bool is_zero(double v) { return std::fabs(v) <= kNodeZeroTol; }

// Shrinks |partner| until both squares fit; √(1 − v²) can round up by an ulp.
// Largest |p| ≤ |partner| with v² + p² ≤ 1; 0 when |v| ≥ 1 leaves no room.
double fit_partner(double v, double partner) {
  if (v * v >= 1.0) return std::copysign(0.0, partner);
  double p = std::copysign(std::sqrt(std::max(0.0, 1.0 - v * v)), partner);
  if (std::fabs(p) > std::fabs(partner)) p = partner;
  while (v * v + p * p > 1.0) p = std::nextafter(p, 0.0);
  return p;
}

}  // namespace

std::size_t partner_index(std::size_t k, std::size_t two_n) {
  const std::size_t n = two_n / 2;
  return k < n ? k + n : k - n;
}

PiecewiseLinearPeriodic sample_interpolate(const TargetFunction& f, int n) {
  if (n < 1) throw std::invalid_argument("sample_interpolate: n must be positive");
  f.check_admissible(std::max(4096, 2 * n));
  const std::size_t two_n = 2 * static_cast<std::size_t>(n);
  std::vector<double> v(two_n);
  for (std::size_t k = 0; k < two_n; ++k) {
    v[k] = k == 0 ? 1.0 : f(kPi * static_cast<double>(k) / n);
    if (is_zero(v[k])) v[k] = 0.0;
  }
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    const std::size_t p = k + static_cast<std::size_t>(n);
    if (v[k] * v[k] + v[p] * v[p] <= 1.0) continue;
    if (k == 0) {
      v[p] = 0.0;
      continue;
    }
    const double scale = 1.0 / std::sqrt(v[k] * v[k] + v[p] * v[p]);
    v[k] *= scale;
    v[p] *= scale;
    while (v[k] * v[k] + v[p] * v[p] > 1.0) v[p] = std::nextafter(v[p], 0.0);
  }
  return PiecewiseLinearPeriodic::equispaced(std::move(v));
}

PiecewiseLinearPeriodic repair_zero_segments(const PiecewiseLinearPeriodic& f1, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("repair_zero_segments: epsilon must be positive");
  const auto& in = f1.values();
  const std::size_t len = in.size();
  std::size_t start = len;
  for (std::size_t k = 0; k < len; ++k) {
    if (!is_zero(in[k])) {
      start = k;
      break;
    }
  }
  if (start == len) throw AdmissibilityError("polyline vanishes at every node; no nonzero flank to repair from");

  const double cap = epsilon / 12.0;
  std::vector<double> out(in);
  // Walk once around the circle starting at a nonzero node so runs never wrap.
  std::size_t step = 1;
  while (step < len) {
    const std::size_t k = (start + step) % len;
    if (!is_zero(in[k])) {
      ++step;
      continue;
    }
    std::size_t run = 0;
    while (is_zero(in[(start + step + run) % len])) ++run;
    const std::size_t i = k;
    const std::size_t j = (start + step + run - 1) % len;
    const double left = in[(i + len - 1) % len];
    const double right = in[(j + 1) % len];
    auto at = [&](std::size_t r) -> double& { return out[(i + r) % len]; };

    if (left > 0 && right > 0) {
      const double g1 = std::min({cap, left, right});
      for (std::size_t r = 0; r < run; ++r) at(r) = g1;
    } else if (left < 0 && right < 0) {
      const double g2 = std::max({-cap, left, right});
      for (std::size_t r = 0; r < run; ++r) at(r) = g2;
    } else if (run > 1) {
      const double g3 = left > 0 ? std::min(cap, left) : std::max(-cap, left);
      const double g4 = right > 0 ? std::min(cap, right) : std::max(-cap, right);
      // Linear in the angle; equispaced nodes make that linear in the index.
      for (std::size_t r = 0; r < run; ++r) {
        at(r) = g3 + (g4 - g3) * static_cast<double>(r) / static_cast<double>(run - 1);
      }
    }
    step += run;
  }
  return f1.with_values(std::move(out));
}

PiecewiseLinearPeriodic enforce_node_constraint(const PiecewiseLinearPeriodic& reference,
                                                const PiecewiseLinearPeriodic& modified, double epsilon) {
  if (reference.nodes() != modified.nodes()) throw std::invalid_argument("enforce_node_constraint: node mismatch");
  const std::size_t n = half_count(modified);
  const std::size_t two_n = 2 * n;
  const auto& ref = reference.values();
  std::vector<double> v = modified.values();
  v[0] = ref[0];
  std::vector<bool> changed(two_n);
  for (std::size_t k = 0; k < two_n; ++k) changed[k] = v[k] != ref[k];

  if (changed[n] && v[0] * v[0] + v[n] * v[n] > 1.0) {
    if (1.0 - v[0] * v[0] > 0.0) {
      v[n] = fit_partner(v[0], v[n]);
    } else {
      v[n] = 0.0;
      if (is_zero(ref[n])) {
        std::size_t i = n;
        std::size_t j = n;
        while (i > 1 && is_zero(ref[i - 1])) --i;
        while (j + 1 < two_n && is_zero(ref[j + 1])) ++j;
        const double left = ref[i - 1];
        const double right = ref[(j + 1) % two_n];
        const double cap = epsilon / 12.0;
        auto fill = [&](std::size_t lo, std::size_t hi, double value) {
          for (std::size_t k = lo; k < hi; ++k) {
            v[k] = value;
            changed[k] = true;
          }
        };
        if ((left > 0) != (right > 0)) {
          fill(i, n, left > 0 ? std::min(cap, left) : std::max(-cap, left));
          fill(n + 1, j + 1, right > 0 ? std::min(cap, right) : std::max(-cap, right));
        } else {
          const double g = left > 0 ? std::min({cap, left, right}) : std::max({-cap, left, right});
          if (n < j) {
            fill(i, n, g);
            fill(n + 1, j + 1, -g);
          } else if (n > i) {
            fill(i, n, -g);
          }
        }
      }
    }
  }

  for (std::size_t k = 1; k < two_n; ++k) {
    if (k == n || !changed[k]) continue;
    const std::size_t p = partner_index(k, two_n);
    if (v[k] * v[k] + v[p] * v[p] > 1.0) {
      v[p] = fit_partner(v[k], v[p]);
      changed[p] = true;
    }
  }
  return modified.with_values(std::move(v));
}

PiecewiseLinearPeriodic remove_symmetric_and_cycles(const PiecewiseLinearPeriodic& f, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("remove_symmetric_and_cycles: epsilon must be positive");
  const std::size_t n = half_count(f);
  const std::size_t two_n = 2 * n;
  const auto& base = f.values();
  const auto& nodes = f.nodes();
  const double cap = epsilon / 12.0;
  std::vector<double> v = base;

  for (int pass = 0; pass < kMaxPasses; ++pass) {
    const auto current = f.with_values(v);
    const auto roots = current.roots(kNodeZeroTol);
    const auto pairs = symmetric_pairs(roots, kRootMatchTol);
    auto cycles = cycles_from_roots(roots, kRootMatchTol);
    std::erase_if(cycles, [](const Cycle& c) { return c.trivial; });
    if (pairs.empty() && cycles.empty()) return current;

    std::vector<double> targets;
    for (const auto& p : pairs) targets.push_back(p.first);
    for (const auto& c : cycles) targets.push_back(wrap_angle(c.betas.front() + kPi));

    const double delta = cap * std::ldexp(1.0, -(pass / 8));
    std::vector<bool> touched(two_n, false);
    for (double t : targets) {
      auto it = std::upper_bound(nodes.begin(), nodes.end(), t + 1e-12);
      const std::size_t seg = it == nodes.begin() ? two_n - 1 : static_cast<std::size_t>(it - nodes.begin()) - 1;
      // Node 0 is pinned at 1 and the node at π is pinned at 0; use the other
      // end of the segment instead.
      for (std::size_t k : {seg, (seg + 1) % two_n}) {
        if (k == 0 || k == n || touched[k]) continue;
        const bool plus = v[k] > kNodeZeroTol || (is_zero(v[k]) && v[(k + 1) % two_n] > 0);
        double next = v[k] + (plus ? delta : -delta);
        next = std::clamp(next, base[k] - cap, base[k] + cap);
        if (std::fabs(next) >= 1.0 || next == v[k]) continue;
        v[k] = next;
        touched[k] = true;
        break;
      }
    }
    v = enforce_node_constraint(f, f.with_values(v), epsilon).values();
  }
  throw ConstructionError("symmetric root pairs or cycles persist after " + std::to_string(kMaxPasses) +
                          " perturbation passes");
}

bool verify_node_inequality(const PiecewiseLinearPeriodic& f3) {
  const std::size_t n = half_count(f3);
  const auto& v = f3.values();
  bool nodes_ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (v[k] * v[k] + v[k + n] * v[k + n] > 1.0) nodes_ok = false;
  }
  bool dense_ok = true;
  for (std::size_t k = 0; k < f3.size() && dense_ok; ++k) {
    for (int s = 1; s < 16; ++s) {
      const double xi = f3.nodes()[k] + f3.segment_length(k) * s / 16.0;
      const double a = f3(xi);
      const double b = f3(xi + kPi);
      if (a * a + b * b > 1.0 + 1e-12) {
        dense_ok = false;
        break;
      }
    }
  }
  return nodes_ok && dense_ok;
}

SafetyMargins safety_margins(const PiecewiseLinearPeriodic& f3) {
  const auto roots = f3.roots(kNodeZeroTol);
  SafetyMargins out;
  if (roots.empty()) return out;
  for (std::size_t k = 0; k < f3.size(); ++k) {
    const double s = std::fabs(f3.slope(k));
    if (s > 0) out.a = std::min(out.a, s);
  }
  auto at_pi = [](double r) { return torus_distance(r, kPi) < kRootMatchTol; };
  double d = std::numeric_limits<double>::infinity();
  for (double r : roots) {
    for (double s : roots) {
      d = std::min(d, torus_distance(r, s + kPi));
      if (!(at_pi(r) && at_pi(s))) d = std::min(d, torus_distance(2.0 * r, s + kPi));
    }
  }
  out.rho = d / 3.0;
  return out;
}

double sup_distance(const TargetFunction& f, const PiecewiseLinearPeriodic& p, int grid_size) {
  const TorusGrid grid(grid_size);
  double m = 0.0;
  for (int g = 0; g < grid.size(); ++g) m = std::max(m, std::fabs(f(grid.point(g)) - p(grid.point(g))));
  return m;
}

double sup_distance(const PiecewiseLinearPeriodic& p, const PiecewiseLinearPeriodic& q) {
  if (p.nodes() != q.nodes()) throw std::invalid_argument("sup_distance: node mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m = std::max(m, std::fabs(p.values()[k] - q.values()[k]));
  return m;
}

}  // namespace framelet
