#include "framelet/mask_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "companion.hpp"
#include "framelet/error.hpp"

namespace framelet {
namespace {

// Eigenvalues of a k-fold root scatter by about eps^(1/k); the band and
// radius admit triple roots.
constexpr double kCandidateBand = 1e-3;
constexpr double kClusterRadius = 1e-4;
constexpr double kSpreadLimit = 1e-6;

double polish(const TrigPoly& m, double theta, int multiplicity) {
  // Newton on g = m^{(mult−1)}, which has a simple root there. Steps are kept
  // only while |m| decreases.
  const TrigPoly g = m.derivative(multiplicity - 1);
  const TrigPoly dg = g.derivative(1);
  double best = theta;
  double best_val = std::abs(m(theta));
  double t = theta;
  for (int it = 0; it < 8; ++it) {
    const cplx d = dg(t);
    if (std::abs(d) == 0.0) break;
    t -= (g(t) / d).real();
    const double v = std::abs(m(t));
    if (!(v < best_val)) break;
    best = t;
    best_val = v;
  }
  return wrap_angle(best);
}

}  // namespace

std::vector<UnitRoot> unit_circle_roots(const TrigPoly& m, double tol) {
  if (m.is_zero()) throw std::invalid_argument("unit_circle_roots: zero polynomial");
  const TrigPoly t = m.trimmed(1e-15 * m.max_abs_coeff());
  if (t.m_max() == t.m_min()) return {};

  const auto eig = detail::companion_eigenvalues(t.coeffs());
  std::vector<cplx> cand;
  for (const auto& z : eig) {
    if (std::fabs(std::abs(z) - 1.0) < kCandidateBand) cand.push_back(z);
  }
  std::sort(cand.begin(), cand.end(), [](cplx a, cplx b) { return wrap_angle(std::arg(a)) < wrap_angle(std::arg(b)); });

  // Single-linkage clustering; clusters may wrap around angle 0.
  std::vector<std::vector<cplx>> clusters;
  for (const auto& z : cand) {
    if (!clusters.empty() && std::abs(clusters.back().back() - z) < kClusterRadius) {
      clusters.back().push_back(z);
    } else {
      clusters.push_back({z});
    }
  }
  if (clusters.size() > 1 && std::abs(clusters.back().back() - clusters.front().front()) < kClusterRadius) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }

  std::vector<UnitRoot> out;
  for (const auto& cl : clusters) {
    const cplx centroid = std::accumulate(cl.begin(), cl.end(), cplx(0.0)) / static_cast<double>(cl.size());
    const double off = std::fabs(std::abs(centroid) - 1.0);
    double spread = 0.0;
    for (const auto& z : cl) spread = std::max(spread, std::abs(z - centroid));
    const int mult = static_cast<int>(cl.size());
    if (off >= tol) {
      if (off < 100.0 * tol) out.push_back({wrap_angle(std::arg(centroid)), mult, true});
      continue;
    }
    UnitRoot r{polish(t, wrap_angle(std::arg(centroid)), mult), mult, false};
    if (mult > 1 && spread > kSpreadLimit) r.ill_conditioned = true;
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const UnitRoot& a, const UnitRoot& b) { return a.angle < b.angle; });
  return out;
}

std::vector<double> root_angles(std::span<const UnitRoot> roots) {
  std::vector<double> a;
  a.reserve(roots.size());
  for (const auto& r : roots) a.push_back(r.angle);
  return a;
}

std::vector<RootPair> symmetric_pairs(std::span<const double> roots, double tol) {
  std::vector<RootPair> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t k = i + 1; k < roots.size(); ++k) {
      if (torus_distance(roots[i] + kPi, roots[k]) < tol) {
        const double a = wrap_angle(roots[i]);
        const double b = wrap_angle(roots[k]);
        out.push_back({std::min(a, b), std::max(a, b)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const RootPair& x, const RootPair& y) {
    return x.first < y.first || (x.first == y.first && x.second < y.second);
  });
  return out;
}

std::vector<Cycle> cycles_from_roots(std::span<const double> roots, double tol) {
  std::vector<double> b;
  for (double r : roots) b.push_back(wrap_angle(r - kPi));
  std::sort(b.begin(), b.end());
  const std::size_t n = b.size();

  // Functional graph of the doubling map restricted to B.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    double best = tol;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = torus_distance(2.0 * b[i], b[k]);
      if (d < best) {
        best = d;
        next[i] = k;
      }
    }
  }

  // Colour-based cycle extraction: 0 unvisited, 1 on current path, 2 done.
  std::vector<int> colour(n, 0);
  std::vector<Cycle> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (colour[s] != 0) continue;
    std::vector<std::size_t> path;
    std::size_t v = s;
    while (v != kNone && colour[v] == 0) {
      colour[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (v != kNone && colour[v] == 1) {
      auto start = std::find(path.begin(), path.end(), v);
      std::vector<std::size_t> cyc(start, path.end());
      auto smallest = std::min_element(cyc.begin(), cyc.end(), [&](std::size_t x, std::size_t y) { return b[x] < b[y]; });
      std::rotate(cyc.begin(), smallest, cyc.end());
      Cycle c;
      for (std::size_t idx : cyc) c.betas.push_back(b[idx]);
      c.n = static_cast<int>(cyc.size());
      if (c.n < 62) {
        const double period = static_cast<double>((1LL << c.n) - 1);
        c.m = std::llround(c.betas.front() * period / kTwoPi);
      } else {
        c.m = -1;
      }
      c.trivial = c.n == 1 && torus_distance(c.betas.front(), 0.0) < tol;
      out.push_back(std::move(c));
    }
    for (std::size_t idx : path) colour[idx] = 2;
  }
  std::sort(out.begin(), out.end(), [](const Cycle& x, const Cycle& y) { return x.betas.front() < y.betas.front(); });
  return out;
}

std::vector<Cycle> find_cycles(const TrigPoly& m, double tol) {
  const auto roots = unit_circle_roots(m);
  const auto angles = root_angles(roots);
  auto cycles = cycles_from_roots(angles, tol);
  std::erase_if(cycles, [&](const Cycle& c) {
    return std::any_of(c.betas.begin(), c.betas.end(), [&](double beta) { return !(std::abs(m(beta + kPi)) < tol); });
  });
  return cycles;
}

bool has_nontrivial_cycle(std::span<const Cycle> cycles) {
  return std::any_of(cycles.begin(), cycles.end(), [](const Cycle& c) { return !c.trivial; });
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable:
      return "stable";
    case Verdict::unstable:
      return "unstable";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

StabilityReport stability_verdict(const TrigPoly& m, double root_tol, double match_tol) {
  const cplx at0 = m(0.0);
  if (std::abs(at0 - 1.0) > 1e-9) {
    throw AdmissibilityError("not a refinement mask: m(0) = " + std::to_string(at0.real()) + "+" +
                             std::to_string(at0.imag()) + "i, expected 1");
  }
  StabilityReport rep;
  rep.roots = unit_circle_roots(m, root_tol);
  const auto angles = root_angles(rep.roots);
  rep.symmetric_pairs = symmetric_pairs(angles, match_tol);
  rep.cycles = cycles_from_roots(angles, match_tol);
  std::erase_if(rep.cycles, [&](const Cycle& c) {
    return std::any_of(c.betas.begin(), c.betas.end(),
                       [&](double beta) { return !(std::abs(m(beta + kPi)) < match_tol); });
  });
  rep.condition_flag =
      std::any_of(rep.roots.begin(), rep.roots.end(), [](const UnitRoot& r) { return r.ill_conditioned; });
  rep.stable = rep.symmetric_pairs.empty() && !has_nontrivial_cycle(rep.cycles);
  rep.verdict = !rep.stable ? Verdict::unstable : rep.condition_flag ? Verdict::unknown : Verdict::stable;

  const TrigPoly s = subqmf_symbol(m);
  rep.subqmf_margin = 1.0 - grid_extremum(s, TorusGrid::for_degree(s.degree())).certified_sup;
  return rep;
}

}  // namespace framelet
