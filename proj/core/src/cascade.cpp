#include "framelet/cascade.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"
#include "framelet/error.hpp"

namespace framelet {

double DyadicFunction::step() const noexcept { return std::ldexp(1.0, -level); }

std::size_t DyadicFunction::expected_size() const noexcept {
  return (static_cast<std::size_t>(hi - lo) << level) + 1;
}

cplx DyadicFunction::operator()(double x) const {
  if (samples.empty() || x < lo || x > hi) return 0.0;
  const double pos = (x - lo) * std::ldexp(1.0, level);
  const std::size_t i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= samples.size()) return samples.back();
  const double t = pos - static_cast<double>(i);
  return samples[i] + t * (samples[i + 1] - samples[i]);
}

ProductResult fourier_product(const TrigPoly& m0, const std::vector<double>& xis, int depth) {
  if (depth < 1) throw std::invalid_argument("fourier_product: depth must be at least 1");
  if (std::abs(m0(0.0) - 1.0) > 1e-9) throw std::invalid_argument("fourier_product: m0(0) != 1");
  ProductResult out;
  for (double xi : xis) {
    cplx prod = 1.0;
    cplx at_depth = 1.0;
    for (int j = 1; j <= depth + 8; ++j) {
      prod *= m0(std::ldexp(xi, -j));
      if (j == depth) at_depth = prod;
    }
    out.values.push_back(at_depth);
    out.delta.push_back(std::abs(prod - at_depth));
  }
  return out;
}

namespace {

// out[i] = 2 Σ_m c_m u(2·(out_lo + i·h) + m) for u sampled on [u_lo, ...] at
// the same level. With r_m = (m_max − m)·2^L this is 2·(g * u)[2i + base],
// g[r_m] = c_m, base = (2·out_lo + m_max − u_lo)·2^L.
class TwoScale {
 public:
  TwoScale(const TrigPoly& mask, int level) : mask_(mask.trimmed()), level_(level) {
    for (const auto& c : mask_.coeffs()) nonzero_ += c != 0.0 ? 1 : 0;
  }

  std::vector<cplx> apply(const std::vector<cplx>& u, int u_lo, int out_lo, std::size_t out_n) {
    const long long scale = 1LL << level_;
    const long long base = (2LL * out_lo + mask_.m_max() - u_lo) * scale;
    std::vector<cplx> out(out_n, 0.0);
    const long long un = static_cast<long long>(u.size());
    if (nonzero_ * out_n <= 4'000'000 || mask_.coeffs().size() == 1) {
      for (std::size_t i = 0; i < out_n; ++i) {
        cplx s = 0.0;
        for (int m = mask_.m_min(); m <= mask_.m_max(); ++m) {
          const cplx c = mask_.coeff(m);
          if (c == 0.0) continue;
          const long long idx = 2LL * static_cast<long long>(i) + base - static_cast<long long>(mask_.m_max() - m) * scale;
          if (idx >= 0 && idx < un) s += c * u[static_cast<std::size_t>(idx)];
        }
        out[i] = 2.0 * s;
      }
      return out;
    }
    const std::size_t glen = static_cast<std::size_t>(mask_.m_max() - mask_.m_min()) * static_cast<std::size_t>(scale) + 1;
    const std::size_t n_fft = std::bit_ceil(glen + u.size());
    if (kernel_.size() != n_fft) {
      std::vector<cplx> g(n_fft, 0.0);
      for (int m = mask_.m_min(); m <= mask_.m_max(); ++m) {
        g[static_cast<std::size_t>(mask_.m_max() - m) * static_cast<std::size_t>(scale)] = mask_.coeff(m);
      }
      kernel_ = detail::fft_forward(std::move(g));
    }
    std::vector<cplx> uu(n_fft, 0.0);
    std::copy(u.begin(), u.end(), uu.begin());
    auto spec = detail::fft_forward(std::move(uu));
    for (std::size_t k = 0; k < n_fft; ++k) spec[k] *= kernel_[k];
    const auto conv = detail::fft_backward(std::move(spec));
    const long long conv_len = static_cast<long long>(glen + u.size() - 1);
    for (std::size_t i = 0; i < out_n; ++i) {
      const long long idx = 2LL * static_cast<long long>(i) + base;
      if (idx >= 0 && idx < conv_len) out[i] = 2.0 * conv[static_cast<std::size_t>(idx)] / static_cast<double>(n_fft);
    }
    return out;
  }

 private:
  TrigPoly mask_;
  int level_;
  std::size_t nonzero_ = 0;
  std::vector<cplx> kernel_;
};

double sup_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

CascadeResult cascade_time(const TrigPoly& m0, int level, int max_iterations) {
  if (level < 0 || level > 24) throw std::invalid_argument("cascade_time: level must be in [0, 24]");
  const cplx total = m0(0.0);
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("cascade_time: taps do not sum to 1");
  const TrigPoly mask = m0.trimmed();
  CascadeResult res;
  res.phi.level = level;
  res.phi.lo = -mask.m_max();
  res.phi.hi = -mask.m_min();
  if (res.phi.hi == res.phi.lo) throw std::invalid_argument("cascade_time: single-tap mask has no function solution");

  auto& phi = res.phi;
  phi.samples.resize(phi.expected_size());
  // On a fixed grid the sweeps only ever see the seed's integer samples, so
  // the unit hat sits on an integer: a hat spanning the whole support would
  // vanish at every integer when the support has length 1 (Haar).
  const double centre = std::floor(0.5 * (phi.hi + phi.lo));
  for (std::size_t i = 0; i < phi.samples.size(); ++i) {
    phi.samples[i] = std::max(0.0, 1.0 - std::fabs(phi.x(i) - centre));
  }

  TwoScale op(mask, level);
  for (int it = 1; it <= max_iterations; ++it) {
    auto next = op.apply(phi.samples, phi.lo, phi.lo, phi.samples.size());
    double change = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) change = std::max(change, std::abs(next[i] - phi.samples[i]));
    phi.samples = std::move(next);
    res.iterations = it;
    const double s = sup_abs(phi.samples);
    if (!(s <= 1e6)) {
      std::ostringstream os;
      os << "unstable cascade: sup |v| = " << s << " after " << it << " iterations";
      throw ConstructionError(os.str());
    }
    if (change < 1e-10) {
      res.converged = true;
      break;
    }
  }
  return res;
}

DyadicFunction wavelet_time(const DyadicFunction& phi, const TrigPoly& mr) {
  if (phi.samples.size() != phi.expected_size()) throw std::invalid_argument("wavelet_time: malformed grid");
  const TrigPoly mask = mr.trimmed();
  DyadicFunction psi;
  psi.level = phi.level;
  // 2x + m ∈ [lo, hi] for some tap m.
  psi.lo = static_cast<int>(std::floor(0.5 * (phi.lo - mask.m_max())));
  psi.hi = static_cast<int>(std::ceil(0.5 * (phi.hi - mask.m_min())));
  if (psi.hi == psi.lo) ++psi.hi;
  TwoScale op(mask, phi.level);
  psi.samples = op.apply(phi.samples, phi.lo, psi.lo, psi.expected_size());
  return psi;
}

double refinement_residual(const DyadicFunction& phi, const TrigPoly& m0) {
  if (phi.samples.size() != phi.expected_size()) throw std::invalid_argument("refinement_residual: malformed grid");
  TwoScale op(m0, phi.level);
  const auto rhs = op.apply(phi.samples, phi.lo, phi.lo, phi.samples.size());
  const std::size_t n = phi.samples.size();
  const double sup = sup_abs(phi.samples);

  // Jumps, including those at the support boundary against the implicit zeros.
  std::vector<bool> skip(n, false);
  const long long guard = 2;
  auto mark = [&](long long centre) {
    for (long long d = -guard; d <= guard + 1; ++d) {
      const long long i = centre + d;
      if (i >= 0 && i < static_cast<long long>(n)) skip[static_cast<std::size_t>(i)] = true;
    }
  };
  for (long long i = -1; i < static_cast<long long>(n); ++i) {
    const cplx a = i < 0 ? cplx(0.0) : phi.samples[static_cast<std::size_t>(i)];
    const cplx b = i + 1 < static_cast<long long>(n) ? phi.samples[static_cast<std::size_t>(i + 1)] : cplx(0.0);
    if (std::abs(a - b) > 0.1 * sup) mark(i);
  }
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!skip[i]) r = std::max(r, std::abs(phi.samples[i] - rhs[i]));
  }
  return r;
}

cplx integral(const DyadicFunction& phi) {
  if (phi.samples.empty()) return 0.0;
  cplx s = 0.0;
  for (const auto& v : phi.samples) s += v;
  s -= 0.5 * (phi.samples.front() + phi.samples.back());
  return s * phi.step();
}

std::vector<cplx> fourier_transform(const DyadicFunction& phi, const std::vector<double>& xis) {
  std::vector<cplx> out;
  out.reserve(xis.size());
  const std::size_t n = phi.samples.size();
  for (double xi : xis) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      s += w * phi.samples[i] * std::polar(1.0, -std::remainder(xi * phi.x(i), kTwoPi));
    }
    out.push_back(s * phi.step());
  }
  return out;
}

}  // namespace framelet
