#include "framelet/trig_interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"
#include "framelet/error.hpp"

namespace framelet {
namespace {

std::size_t checked_half(const std::vector<double>& samples) {
  if (samples.empty() || samples.size() % 2 != 0) {
    throw std::invalid_argument("inverse_dft: sample count must be even and positive");
  }
  return samples.size() / 2;
}

std::vector<double> samples_of(const PiecewiseLinearPeriodic& f3, int j) {
  if (j < 1) throw std::invalid_argument("interpolation order j must be positive");
  std::vector<double> s(2 * static_cast<std::size_t>(j));
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = f3(kPi * static_cast<double>(k) / j);
  return s;
}

}  // namespace

double kernel_t(int j, int k, double xi) {
  if (j < 1 || k < 0 || k >= 2 * j) throw std::invalid_argument("kernel_t: need j >= 1 and 0 <= k < 2j");
  // sin²(jξ) = sin²(j·t) for t = ξ − πk/j; reducing t first keeps the ratio
  // accurate near the node.
  const double t = std::remainder(xi - kPi * k / j, kTwoPi);
  if (t == 0.0) return 1.0;
  const double r = std::sin(j * t) / (2.0 * j * std::sin(0.5 * t));
  return r * r;
}

std::vector<cplx> inverse_dft(const std::vector<double>& samples) {
  const std::size_t j = checked_half(samples);
  const std::size_t big_n = 2 * j;
  std::vector<cplx> data(samples.begin(), samples.end());
  const auto spec = detail::fft_forward(std::move(data));
  std::vector<cplx> out(2 * big_n - 1);
  const int lo = -static_cast<int>(big_n - 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int m = lo + static_cast<int>(i);
    const std::size_t idx = static_cast<std::size_t>((m % static_cast<int>(big_n) + static_cast<int>(big_n)) %
                                                     static_cast<int>(big_n));
    out[i] = spec[idx] / static_cast<double>(big_n);
  }
  return out;
}

std::vector<cplx> inverse_dft_direct(const std::vector<double>& samples) {
  const std::size_t j = checked_half(samples);
  const long long big_n = static_cast<long long>(2 * j);
  std::vector<cplx> out(static_cast<std::size_t>(2 * big_n - 1));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const long long m = -(big_n - 1) + static_cast<long long>(i);
    cplx s = 0.0;
    for (long long k = 0; k < big_n; ++k) {
      const long long r = ((m * k) % big_n + big_n) % big_n;
      s += samples[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * static_cast<double>(r) / big_n);
    }
    out[i] = s / static_cast<double>(big_n);
  }
  return out;
}

FilterCoeffs filter_coeffs_from_samples(const std::vector<double>& samples) {
  const auto ft = inverse_dft(samples);
  FilterCoeffs fc;
  fc.j = static_cast<int>(samples.size() / 2);
  const int two_j = 2 * fc.j;
  fc.taps.resize(ft.size());
  for (int m = fc.m_min(); m <= -fc.m_min(); ++m) {
    const double w = 1.0 - std::abs(m) / static_cast<double>(two_j);
    fc.taps[static_cast<std::size_t>(m - fc.m_min())] = w * ft[static_cast<std::size_t>(m - fc.m_min())];
  }
  double defect = 0.0;
  for (int m = 0; m <= -fc.m_min(); ++m) defect = std::max(defect, std::abs(fc.tap(m) - std::conj(fc.tap(-m))));
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "filter taps are not conjugate-symmetric (defect " << defect << "); input is not real";
    throw ConstructionError(os.str());
  }
  for (int m = 0; m <= -fc.m_min(); ++m) {
    const cplx c = m == 0 ? cplx(fc.tap(0).real()) : fc.tap(m);
    fc.taps[static_cast<std::size_t>(m - fc.m_min())] = c;
    fc.taps[static_cast<std::size_t>(-m - fc.m_min())] = std::conj(c);
  }
  return fc;
}

FilterCoeffs filter_coeffs(const PiecewiseLinearPeriodic& f3, int j) {
  return filter_coeffs_from_samples(samples_of(f3, j));
}

TrigPoly interpolate_H(const PiecewiseLinearPeriodic& f3, int j) { return filter_coeffs(f3, j).mask(); }

double kernel_sum(const PiecewiseLinearPeriodic& f3, int j, double xi) {
  double s = 0.0;
  for (int k = 0; k < 2 * j; ++k) s += f3(kPi * k / j) * kernel_t(j, k, xi);
  return s;
}

double sup_distance(const PiecewiseLinearPeriodic& f3, const TrigPoly& h, const TorusGrid& grid) {
  const auto vals = eval_on_grid(h, grid);
  double m = 0.0;
  for (int g = 0; g < grid.size(); ++g) {
    m = std::max(m, std::fabs(f3(grid.point(g)) - vals[static_cast<std::size_t>(g)].real()));
  }
  return m;
}

DegreeChoice choose_degree(const PiecewiseLinearPeriodic& f3, DesignCertificate certificate,
                           const std::function<bool(const TrigPoly&)>& stability_check, int j_cap) {
  if (certificate.n < 1) throw std::invalid_argument("choose_degree: certificate has no sampling parameter");
  const double budget =
      certificate.epsilon - (certificate.err_f_f1 + certificate.err_f1_f2 + certificate.err_f2_f3);
  double best = std::numeric_limits<double>::infinity();
  if (budget <= 0) {
    // Nothing to try; the polyline error is a lower bound for any H_j.
    const double used = certificate.epsilon - budget;
    throw BudgetExhausted("polyline stages already use the whole error budget", used);
  }
  for (long long j = certificate.n; j <= j_cap; j *= 2) {
    const int jj = static_cast<int>(j);
    TrigPoly h = interpolate_H(f3, jj);
    const TorusGrid grid(default_grid_size(2 * jj - 1));
    const double err = sup_distance(f3, h, grid);
    best = std::min(best, err);
    if (err < budget && stability_check(h)) {
      certificate.j = jj;
      certificate.err_f3_h = err;
      certificate.grid_size = grid.size();
      certificate.margin_certified = err < certificate.a * certificate.rho;
      return {jj, std::move(h), certificate};
    }
  }
  std::ostringstream os;
  os << "no interpolation order j <= " << j_cap << " met the remaining budget " << budget
     << " with a stable mask (best sup error " << best << ")";
  throw BudgetExhausted(os.str(), best);
}

}  // namespace framelet
