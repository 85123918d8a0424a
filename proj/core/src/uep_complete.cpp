#include "framelet/uep_complete.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "companion.hpp"
#include "fft.hpp"
#include "framelet/error.hpp"

namespace framelet {

std::vector<TrigPoly> MaskBundle::all() const {
  std::vector<TrigPoly> out{m0};
  out.insert(out.end(), wavelet_masks.begin(), wavelet_masks.end());
  return out;
}

TrigPoly deficiency(const TrigPoly& m0) {
  const TrigPoly s = subqmf_symbol(m0);
  const auto ext = grid_extremum(s, TorusGrid::for_degree(s.degree()));
  if (ext.certified_sup > 1.0 + 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "mask violates |m0(xi)|^2 + |m0(xi+pi)|^2 <= 1 (certified sup " << ext.certified_sup << ", grid max "
       << ext.max << ")";
    throw AdmissibilityError(os.str());
  }
  return TrigPoly::constant(1.0) - s;
}

namespace {

// Autocorrelation coefficients a_k = Σ_n b_{n+k} conj(b_n), k = 0..deg b.
std::vector<cplx> autocorr_nonneg(const std::vector<cplx>& b) {
  const std::size_t len = b.size();
  std::vector<cplx> a(len);
  for (std::size_t k = 0; k < len; ++k) {
    cplx s = 0.0;
    for (std::size_t n = 0; n + k < len; ++n) s += b[n + k] * std::conj(b[n]);
    a[k] = s;
  }
  return a;
}

std::vector<cplx> convolve(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  std::vector<cplx> out(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < y.size(); ++k) out[i + k] += x[i] * y[k];
  }
  return out;
}

struct Residual {
  std::vector<cplx> r;  // P_k − a_k, k = 0..D
  double max = 0.0;
};

Residual coefficient_residual(const TrigPoly& p, const std::vector<cplx>& b) {
  const auto a = autocorr_nonneg(b);
  Residual res;
  res.r.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    res.r[k] = p.coeff(static_cast<int>(k)) - a[k];
    res.max = std::max(res.max, std::abs(res.r[k]));
  }
  return res;
}

// Gauss–Newton on the cofactor bt with b = F * bt; Im bt_0 is held fixed to
// remove the phase freedom of b.
std::vector<cplx> polish_cofactor(const TrigPoly& p, const std::vector<cplx>& f, std::vector<cplx> bt) {
  const int k_deg = static_cast<int>(f.size()) - 1;
  const int dt = static_cast<int>(bt.size()) - 1;
  const int d = dt + k_deg;
  const Eigen::Index rows = 2 * d + 1;
  const Eigen::Index cols = 2 * dt + 1;

  std::vector<cplx> b = convolve(f, bt);
  Residual res = coefficient_residual(p, b);
  const double scale = p.max_abs_coeff();
  for (int it = 0; it < 30 && res.max > 0.0; ++it) {
    Eigen::MatrixXd jac(rows, cols);
    Eigen::VectorXd rhs(rows);
    rhs(0) = res.r[0].real();
    for (int k = 1; k <= d; ++k) {
      rhs(2 * k - 1) = res.r[static_cast<std::size_t>(k)].real();
      rhs(2 * k) = res.r[static_cast<std::size_t>(k)].imag();
    }
    auto bc = [&](int idx) -> cplx { return idx >= 0 && idx <= d ? b[static_cast<std::size_t>(idx)] : cplx(0.0); };
    auto column = [&](Eigen::Index col, int pidx, cplx e) {
      for (int k = 0; k <= d; ++k) {
        cplx s = 0.0;
        for (int t = 0; t <= k_deg; ++t) {
          const cplx ef = e * f[static_cast<std::size_t>(t)];
          s += ef * std::conj(bc(pidx + t - k)) + std::conj(ef) * bc(pidx + t + k);
        }
        if (k == 0) {
          jac(0, col) = s.real();
        } else {
          jac(2 * k - 1, col) = s.real();
          jac(2 * k, col) = s.imag();
        }
      }
    };
    column(0, 0, 1.0);
    for (int pidx = 1; pidx <= dt; ++pidx) {
      column(2 * pidx - 1, pidx, 1.0);
      column(2 * pidx, pidx, cplx(0.0, 1.0));
    }
    const Eigen::VectorXd delta = jac.householderQr().solve(rhs);
    std::vector<cplx> trial(bt);
    trial[0] += delta(0);
    for (int pidx = 1; pidx <= dt; ++pidx) trial[static_cast<std::size_t>(pidx)] += cplx(delta(2 * pidx - 1), delta(2 * pidx));
    std::vector<cplx> tb = convolve(f, trial);
    Residual tres = coefficient_residual(p, tb);
    if (!(tres.max < res.max)) break;
    bt = std::move(trial);
    b = std::move(tb);
    res = std::move(tres);
    if (res.max <= 1e-15 * scale) break;
  }
  return b;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> f{1.0};
  for (const auto& z : roots) {
    std::vector<cplx> next(f.size() + 1, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) {
      next[k + 1] += f[k];
      next[k] -= z * f[k];
    }
    f = std::move(next);
  }
  return f;
}

// b from the companion roots of u^d·P(u). Circle zeros of P show up as pairs
// of eigenvalues near |u| = 1; each pair's centroid, projected onto the
// circle, is a zero of b and stays fixed. Of the remaining reciprocal pairs
// the outer root goes into the cofactor, which Gauss–Newton then refines.
// Eigenvalues of clustered circle zeros scatter further off the circle, so
// the caller tries several bands.
std::vector<cplx> factor_from_roots(const TrigPoly& p, const std::vector<cplx>& roots, double band) {
  const int d = p.degree();
  std::vector<cplx> near, outer;
  for (const auto& z : roots) {
    if (std::fabs(std::abs(z) - 1.0) <= band) {
      near.push_back(z);
    } else if (std::abs(z) > 1.0) {
      outer.push_back(z);
    }
  }
  std::vector<cplx> circle;
  if (near.size() % 2 == 0 && outer.size() + near.size() / 2 == static_cast<std::size_t>(d)) {
    std::sort(near.begin(), near.end(), [](cplx x, cplx y) { return wrap_angle(std::arg(x)) < wrap_angle(std::arg(y)); });
    for (std::size_t i = 0; i < near.size(); i += 2) {
      const cplx c = 0.5 * (near[i] + near[i + 1]);
      circle.push_back(c / std::abs(c));
    }
  } else {
    // Ambiguous split: outer half by modulus, all refined together.
    auto sorted = roots;
    std::sort(sorted.begin(), sorted.end(), [](cplx x, cplx y) { return std::abs(x) > std::abs(y); });
    outer.assign(sorted.begin(), sorted.begin() + d);
  }

  const auto f = poly_from_roots(circle);
  auto bt = poly_from_roots(outer);
  const auto full = convolve(f, bt);
  double energy = 0.0;
  for (const auto& c : full) energy += std::norm(c);
  const double scale = std::sqrt(std::max(0.0, p.coeff(0).real()) / energy);
  for (auto& c : bt) c *= scale;
  return polish_cofactor(p, f, std::move(bt));
}

}  // namespace

SpectralFactor fejer_riesz(const TrigPoly& p_in) {
  const TrigPoly p = p_in.real_part().trimmed();
  if (p.is_zero()) return {TrigPoly::constant(0.0), 0.0, 0.0, false};
  const int d = p.degree();
  if (d == 0) {
    const double p0 = p.coeff(0).real();
    if (p0 < -1e-10) throw AdmissibilityError("fejer_riesz: negative constant");
    return {TrigPoly::constant(std::sqrt(std::max(0.0, p0))), 0.0, 0.0, false};
  }

  const int n_grid = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(1024, 16 * (2 * d + 1)))));
  const TorusGrid grid(n_grid);
  const auto pv = eval_on_grid(p, grid);
  double mx = 0.0;
  double mn = pv[0].real();
  for (const auto& v : pv) {
    mx = std::max(mx, v.real());
    mn = std::min(mn, v.real());
  }
  if (mn < -1e-10) {
    std::ostringstream os;
    os << "fejer_riesz: polynomial is negative on the circle (grid min " << mn << ")";
    throw AdmissibilityError(os.str());
  }

  // Zeros on the circle: grid minima far below the maximum, refined as
  // critical points, accepted when the value there is at rounding level.
  const double l1 = p.l1_norm();
  const TrigPoly dp = p.derivative(1);
  const TrigPoly d2p = p.derivative(2);
  std::vector<double> zeros;
  std::size_t doubled = 0;
  for (int g = 0; g < n_grid; ++g) {
    const double v = pv[static_cast<std::size_t>(g)].real();
    const double prev = pv[static_cast<std::size_t>((g + n_grid - 1) % n_grid)].real();
    const double next = pv[static_cast<std::size_t>((g + 1) % n_grid)].real();
    if (!(v <= prev && v <= next && v < 1e-7 * mx)) continue;
    double t = grid.point(g);
    for (int it = 0; it < 50; ++it) {
      const double g1 = dp(t).real();
      const double g2 = d2p(t).real();
      if (!(g2 > 0)) break;
      const double step = g1 / g2;
      t -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    t = wrap_angle(t);
    if (p(t).real() > 1e-12 * l1) continue;
    if (std::any_of(zeros.begin(), zeros.end(), [&](double z) { return torus_distance(z, t) < 1e-6; })) continue;
    zeros.push_back(t);
    // A vanishing second derivative as well means a zero of order four.
    if (std::fabs(d2p(t).real()) <= 1e-8 * l1 * static_cast<double>(d) * d) {
      zeros.push_back(t);
      ++doubled;
    }
  }
  // Tightly clustered zeros also pass the second-derivative test. When that
  // overcounts, keep each zero once and leave the rest to the polish step.
  if (doubled > 0 && static_cast<int>(zeros.size()) > d) {
    std::vector<double> once;
    for (double z : zeros) {
      if (once.empty() || once.back() != z) once.push_back(z);
    }
    zeros = std::move(once);
  }
  if (static_cast<int>(zeros.size()) > d) throw ConstructionError("fejer_riesz: more circle zeros than the degree");

  std::vector<cplx> f{1.0};
  for (double z : zeros) {
    const cplx u0 = std::polar(1.0, z);
    std::vector<cplx> next(f.size() + 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      next[i + 1] += f[i];
      next[i] -= u0 * f[i];
    }
    f = std::move(next);
  }
  const int dt = d - static_cast<int>(zeros.size());

  // Minimum-phase start for the zero-free cofactor from its cepstrum, sampled
  // half a cell off the grid so the divided-out zeros are never hit.
  const double shift = kPi / n_grid;
  std::vector<cplx> shifted(p.coeffs());
  for (int m = p.m_min(); m <= p.m_max(); ++m) {
    shifted[static_cast<std::size_t>(m - p.m_min())] *= std::polar(1.0, m * shift);
  }
  const auto qv = eval_on_grid(TrigPoly(p.m_min(), std::move(shifted)), grid);
  std::vector<cplx> logq(static_cast<std::size_t>(n_grid));
  for (int g = 0; g < n_grid; ++g) {
    const double th = grid.point(g) + shift;
    double q = qv[static_cast<std::size_t>(g)].real();
    for (double z : zeros) q /= std::norm(std::polar(1.0, th) - std::polar(1.0, z));
    logq[static_cast<std::size_t>(g)] = std::log(std::max(q, 1e-300));
  }
  auto cep = detail::fft_forward(std::move(logq));
  std::vector<cplx> h(static_cast<std::size_t>(n_grid), 0.0);
  for (int nn = 0; nn < n_grid / 2; ++nn) {
    const cplx c = cep[static_cast<std::size_t>(nn)] / static_cast<double>(n_grid) * std::polar(1.0, -nn * shift);
    h[static_cast<std::size_t>(nn)] = nn == 0 ? 0.5 * c : c;
  }
  auto logb = detail::fft_backward(std::move(h));
  for (auto& v : logb) v = std::exp(v);
  const auto bspec = detail::fft_forward(std::move(logb));
  std::vector<cplx> bt(static_cast<std::size_t>(dt + 1));
  for (int nn = 0; nn <= dt; ++nn) bt[static_cast<std::size_t>(nn)] = bspec[static_cast<std::size_t>(nn)] / static_cast<double>(n_grid);

  std::vector<cplx> b = polish_cofactor(p, f, std::move(bt));
  if (double best = coefficient_residual(p, b).max; best > 1e-12 * l1) {
    std::vector<cplx> a(static_cast<std::size_t>(2 * d + 1));
    for (int k = 0; k <= 2 * d; ++k) a[static_cast<std::size_t>(k)] = p.coeff(k - d);
    const auto roots = detail::companion_eigenvalues(a);
    for (double band : {1e-7, 1e-5, 1e-4, 1e-3, 1e-2}) {
      auto alt = factor_from_roots(p, roots, band);
      const double r = coefficient_residual(p, alt).max;
      if (r < best) {
        best = r;
        b = std::move(alt);
      }
    }
  }
  const cplx b0 = b[0];
  if (std::abs(b0) > 0) {
    const cplx phase = std::conj(b0) / std::abs(b0);
    for (auto& c : b) c *= phase;
    b[0] = std::abs(b0);
  }

  SpectralFactor out;
  out.b = TrigPoly(0, std::move(b));
  const TrigPoly diff = abs_squared(out.b) - p;
  out.coeff_residual = diff.max_abs_coeff();
  const auto bv = eval_on_grid(out.b, grid);
  for (int g = 0; g < n_grid; ++g) {
    out.residual = std::max(out.residual,
                            std::fabs(std::norm(bv[static_cast<std::size_t>(g)]) - pv[static_cast<std::size_t>(g)].real()));
  }
  out.degraded = out.residual > 1e-8;
  return out;
}

MaskBundle wavelet_masks(const TrigPoly& m0) {
  const cplx at0 = m0(0.0);
  if (std::abs(at0 - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "not a refinement mask: m0(0) = " << at0 << ", expected 1";
    throw AdmissibilityError(os.str());
  }
  MaskBundle bundle;
  bundle.m0 = m0;
  const TrigPoly m1 = TrigPoly::monomial(1) * half_shift(m0).conj_reflect();
  if (!m1.is_zero()) bundle.wavelet_masks.push_back(m1);

  const TrigPoly a2 = deficiency(m0);
  std::ostringstream prov;
  prov << "m1(xi) = e^{i xi} conj(m0(xi+pi))";
  // Deficiencies at rounding level are treated as zero; the UEP residual
  // check still sees them.
  if (a2.max_abs_coeff() > 1e-14) {
    const auto sf = fejer_riesz(a2.compressed(2, 1e-15));
    const TrigPoly m2 = (1.0 / std::sqrt(2.0)) * sf.b.dilated(2);
    if (!m2.is_zero()) {
      bundle.wavelet_masks.push_back(m2);
      bundle.wavelet_masks.push_back(TrigPoly::monomial(1) * m2);
    }
    prov.precision(3);
    prov << "; m2(xi) = b(2 xi)/sqrt(2), m3(xi) = e^{i xi} b(2 xi)/sqrt(2) with |b(w)|^2 = 1 - |m0(xi)|^2 - "
            "|m0(xi+pi)|^2, w = e^{2 i xi} (spectral factor residual "
         << sf.residual << (sf.degraded ? ", degraded" : "") << ")";
  }
  bundle.provenance = prov.str();
  return bundle;
}

UepResidual verify_uep(const MaskBundle& bundle, const TorusGrid& grid) {
  if (grid.size() % 2 != 0) throw std::invalid_argument("verify_uep: grid size must be even");
  const auto masks = bundle.all();
  const std::size_t g_size = static_cast<std::size_t>(grid.size());
  const std::size_t half = g_size / 2;
  std::vector<double> row1(g_size, -1.0);
  std::vector<cplx> row2(g_size, 0.0);
  TrigPoly poly1 = TrigPoly::constant(-1.0);
  TrigPoly poly2 = TrigPoly::constant(0.0);
  for (const auto& m : masks) {
    const auto v = eval_on_grid(m, grid);
    for (std::size_t g = 0; g < g_size; ++g) {
      row1[g] += std::norm(v[g]);
      row2[g] += v[g] * std::conj(v[(g + half) % g_size]);
    }
    poly1 = poly1 + abs_squared(m);
    poly2 = poly2 + m * half_shift(m).conj_reflect();
  }
  UepResidual r;
  for (std::size_t g = 0; g < g_size; ++g) {
    r.row1_grid = std::max(r.row1_grid, std::fabs(row1[g]));
    r.row2_grid = std::max(r.row2_grid, std::abs(row2[g]));
  }
  r.row1_coeff = poly1.max_abs_coeff();
  r.row2_coeff = poly2.max_abs_coeff();
  return r;
}

UepResidual verify_uep(const MaskBundle& bundle) {
  int deg = 0;
  for (const auto& m : bundle.all()) deg = std::max(deg, m.degree());
  int g = default_grid_size(2 * deg);
  if (g % 2 != 0) ++g;
  return verify_uep(bundle, TorusGrid(g));
}

}  // namespace framelet
