#include "framelet/frame_verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace framelet {
namespace {

const double kSqrt2 = std::sqrt(2.0);

std::size_t wrap_index(long long i, std::size_t n) {
  const long long nn = static_cast<long long>(n);
  return static_cast<std::size_t>(((i % nn) + nn) % nn);
}

std::vector<cplx> analyse_band(const std::vector<cplx>& x, const TrigPoly& h) {
  const std::size_t n = x.size();
  std::vector<cplx> y(n / 2, 0.0);
  for (std::size_t k = 0; k < n / 2; ++k) {
    cplx s = 0.0;
    for (int m = h.m_min(); m <= h.m_max(); ++m) {
      const cplx c = h.coeff(m);
      if (c != 0.0) s += std::conj(c) * x[wrap_index(2 * static_cast<long long>(k) + m, n)];
    }
    y[k] = kSqrt2 * s;
  }
  return y;
}

void synthesise_band(const std::vector<cplx>& y, const TrigPoly& h, std::vector<cplx>& out) {
  const std::size_t n = out.size();
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k] == 0.0) continue;
    for (int m = h.m_min(); m <= h.m_max(); ++m) {
      const cplx c = h.coeff(m);
      if (c != 0.0) out[wrap_index(2 * static_cast<long long>(k) + m, n)] += kSqrt2 * c * y[k];
    }
  }
}

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

}  // namespace

double Subbands::energy() const {
  double e = norm2(approx);
  for (const auto& level : details) {
    for (const auto& band : level) e += norm2(band);
  }
  return e;
}

Subbands analysis(const std::vector<cplx>& x, const MaskBundle& bundle, int levels) {
  if (levels < 0) throw std::invalid_argument("analysis: negative level count");
  const std::size_t block = std::size_t{1} << levels;
  if (x.empty() || x.size() % block != 0) {
    throw std::invalid_argument("analysis: length " + std::to_string(x.size()) + " is not a positive multiple of 2^" +
                                std::to_string(levels));
  }
  Subbands sb;
  std::vector<cplx> low = x;
  for (int l = 0; l < levels; ++l) {
    std::vector<std::vector<cplx>> bands;
    for (const auto& h : bundle.wavelet_masks) bands.push_back(analyse_band(low, h));
    low = analyse_band(low, bundle.m0);
    sb.details.push_back(std::move(bands));
  }
  sb.approx = std::move(low);
  return sb;
}

Subbands analysis(const std::vector<double>& x, const MaskBundle& bundle, int levels) {
  return analysis(std::vector<cplx>(x.begin(), x.end()), bundle, levels);
}

std::vector<cplx> synthesis(const Subbands& sb, const MaskBundle& bundle) {
  std::vector<cplx> low = sb.approx;
  for (int l = sb.levels() - 1; l >= 0; --l) {
    const auto& bands = sb.details[static_cast<std::size_t>(l)];
    if (bands.size() != bundle.wavelet_masks.size()) {
      throw std::invalid_argument("synthesis: level " + std::to_string(l) + " has " + std::to_string(bands.size()) +
                                  " detail bands, bundle has " + std::to_string(bundle.wavelet_masks.size()));
    }
    for (const auto& b : bands) {
      if (b.size() != low.size()) throw std::invalid_argument("synthesis: band length mismatch");
    }
    std::vector<cplx> out(2 * low.size(), 0.0);
    synthesise_band(low, bundle.m0, out);
    for (std::size_t r = 0; r < bands.size(); ++r) synthesise_band(bands[r], bundle.wavelet_masks[r], out);
    low = std::move(out);
  }
  return low;
}

PrReport pr_error(const MaskBundle& bundle, int trials, int length, int levels, std::uint64_t seed) {
  PrReport rep;
  rep.uep_residual = verify_uep(bundle).coeff_max();
  rep.bundle_suspect = !(rep.uep_residual < 1e-6);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> x(static_cast<std::size_t>(length));
    for (auto& v : x) v = dist(rng);
    const auto back = synthesis(analysis(x, bundle, levels), bundle);
    for (std::size_t i = 0; i < x.size(); ++i) rep.max_error = std::max(rep.max_error, std::abs(back[i] - x[i]));
  }
  return rep;
}

Generators generators(const MaskBundle& bundle, int level) {
  Generators g;
  g.phi = cascade_time(bundle.m0, level).phi;
  for (const auto& m : bundle.wavelet_masks) g.psi.push_back(wavelet_time(g.phi, m));
  return g;
}

namespace {

// ⟨g, ψ_{j,k}⟩ = ∫ g(x) conj(2^{j/2} ψ(2^j x + k)) dx.
cplx coefficient(const DyadicFunction& g, const DyadicFunction& psi, int j, long long k) {
  const double scale = std::ldexp(1.0, j);
  const double amp = std::sqrt(scale);
  // Support of ψ_{j,k}: [(lo − k)/2^j, (hi − k)/2^j].
  const double a = std::max<double>(g.lo, (psi.lo - static_cast<double>(k)) / scale);
  const double b = std::min<double>(g.hi, (psi.hi - static_cast<double>(k)) / scale);
  if (!(a < b)) return 0.0;
  cplx s = 0.0;
  double h;
  if (psi.step() / scale <= g.step()) {
    // ψ_{j,k} is sampled more finely: walk its own grid.
    h = psi.step() / scale;
    const double t0 = std::ceil((a * scale + static_cast<double>(k) - psi.lo) / psi.step() - 1e-9);
    const double t1 = std::floor((b * scale + static_cast<double>(k) - psi.lo) / psi.step() + 1e-9);
    for (double t = t0; t <= t1; t += 1.0) {
      const std::size_t idx = static_cast<std::size_t>(t);
      const double x = (psi.lo + t * psi.step() - static_cast<double>(k)) / scale;
      const double w = (t == t0 || t == t1) ? 0.5 : 1.0;
      s += w * g(x) * std::conj(psi.samples[idx]);
    }
  } else {
    h = g.step();
    const double t0 = std::ceil((a - g.lo) / g.step() - 1e-9);
    const double t1 = std::floor((b - g.lo) / g.step() + 1e-9);
    for (double t = t0; t <= t1; t += 1.0) {
      const std::size_t idx = static_cast<std::size_t>(t);
      const double x = g.lo + t * g.step();
      const double w = (t == t0 || t == t1) ? 0.5 : 1.0;
      s += w * g.samples[idx] * std::conj(psi(scale * x + static_cast<double>(k)));
    }
  }
  return amp * h * s;
}

}  // namespace

ParsevalSum parseval_partial(const DyadicFunction& g, const Generators& gens, int j_min, int j_max,
                             std::optional<std::pair<long long, long long>> k_range) {
  if (g.samples.size() != g.expected_size()) throw std::invalid_argument("parseval_partial: malformed test signal");
  if (gens.phi.level != g.level) {
    throw std::invalid_argument("parseval_partial: generators at level " + std::to_string(gens.phi.level) +
                                " cannot resolve a signal sampled at level " + std::to_string(g.level));
  }
  ParsevalSum out;
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    const double w = (i == 0 || i + 1 == g.samples.size()) ? 0.5 : 1.0;
    out.norm2 += w * std::norm(g.samples[i]);
  }
  out.norm2 *= g.step();
  if (k_range && k_range->first > k_range->second) return out;
  for (int j = j_min; j <= j_max; ++j) {
    const double scale = std::ldexp(1.0, j);
    for (const auto& psi : gens.psi) {
      // ψ_{j,k} meets [g.lo, g.hi] iff lo − 2^j·g.hi < k < hi − 2^j·g.lo.
      long long k0 = static_cast<long long>(std::floor(psi.lo - scale * g.hi));
      long long k1 = static_cast<long long>(std::ceil(psi.hi - scale * g.lo));
      if (k_range) {
        k0 = std::max(k0, k_range->first);
        k1 = std::min(k1, k_range->second);
      }
      for (long long k = k0; k <= k1; ++k) out.partial += std::norm(coefficient(g, psi, j, k));
    }
  }
  return out;
}

ParsevalSum parseval_partial(const DyadicFunction& g, const MaskBundle& bundle, int j_min, int j_max,
                             std::optional<std::pair<long long, long long>> k_range) {
  return parseval_partial(g, generators(bundle, g.level), j_min, j_max, k_range);
}

}  // namespace framelet
