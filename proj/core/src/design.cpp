#include "framelet/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "framelet/error.hpp"

namespace framelet {
namespace {

int verification_grid(int n, std::optional<int> grid_size) { return grid_size.value_or(std::max(4096, 16 * n)); }

}  // namespace

int choose_sampling(const TargetFunction& f, double epsilon, std::optional<int> grid_size) {
  double best = std::numeric_limits<double>::infinity();
  for (int n = 4; 2 * n <= 65536; n *= 2) {
    const auto f1 = sample_interpolate(f, n);
    const double err = sup_distance(f, f1, verification_grid(n, grid_size));
    best = std::min(best, err);
    if (err < epsilon / 6.0) return n;
  }
  std::ostringstream os;
  os << "no sampling with 2n <= 65536 brings the polyline within epsilon/6 = " << epsilon / 6.0
     << " of the target (best " << best << ")";
  throw BudgetExhausted(os.str(), best);
}

DesignResult design_mask(const DesignRequest& req) {
  if (!(req.epsilon > 0)) throw std::invalid_argument("design: epsilon must be positive");
  req.target.check_admissible(req.grid_size.value_or(4096));
  const int n = req.n ? *req.n : choose_sampling(req.target, req.epsilon, req.grid_size);

  const auto f1 = sample_interpolate(req.target, n);
  const auto f2 = enforce_node_constraint(f1, repair_zero_segments(f1, req.epsilon), req.epsilon);
  const auto f3 = remove_symmetric_and_cycles(f2, req.epsilon);
  if (!verify_node_inequality(f3)) throw ConstructionError("repaired polyline violates the node inequality");

  DesignCertificate cert;
  cert.epsilon = req.epsilon;
  cert.n = n;
  cert.err_f_f1 = sup_distance(req.target, f1, verification_grid(n, req.grid_size));
  cert.err_f1_f2 = sup_distance(f1, f2);
  cert.err_f2_f3 = sup_distance(f2, f3);
  const auto margins = safety_margins(f3);
  cert.a = margins.a;
  cert.rho = margins.rho;

  StabilityReport report;
  auto stable = [&report](const TrigPoly& h) {
    report = stability_verdict(h);
    return report.verdict == Verdict::stable;
  };
  auto choice = choose_degree(f3, cert, stable, req.j_cap);

  DesignResult out{f1, f2, f3, filter_coeffs(f3, choice.j), std::move(choice.h), choice.certificate,
                   std::move(report), {}};
  const TorusGrid grid(out.certificate.grid_size);
  const auto hv = eval_on_grid(out.mask, grid);
  for (int g = 0; g < grid.size(); ++g) {
    out.certificate.err_f_h = std::max(
        out.certificate.err_f_h, std::fabs(req.target(grid.point(g)) - hv[static_cast<std::size_t>(g)].real()));
  }
  const TrigPoly s = subqmf_symbol(out.mask);
  out.subqmf = grid_extremum(s, TorusGrid::for_degree(s.degree()));
  return out;
}

}  // namespace framelet
