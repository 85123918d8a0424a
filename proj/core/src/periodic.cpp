#include "framelet/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "framelet/error.hpp"

namespace framelet {

double wrap_angle(double xi) {
  double r = std::fmod(xi, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double torus_distance(double a, double b) { return std::fabs(std::remainder(a - b, kTwoPi)); }

// ---------------------------------------------------------------- TrigPoly

TrigPoly::TrigPoly() : m_min_(0), coeffs_{cplx(0.0)} {}

TrigPoly::TrigPoly(int m_min, std::vector<cplx> coeffs) : m_min_(m_min), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    m_min_ = 0;
    coeffs_.push_back(0.0);
  }
}

TrigPoly TrigPoly::constant(cplx c) { return TrigPoly(0, {c}); }

TrigPoly TrigPoly::monomial(int m, cplx c) { return TrigPoly(m, {c}); }

cplx TrigPoly::coeff(int m) const noexcept {
  if (m < m_min_ || m > m_max()) return 0.0;
  return coeffs_[static_cast<std::size_t>(m - m_min_)];
}

int TrigPoly::degree() const noexcept { return std::max(std::abs(m_min_), std::abs(m_max())); }

bool TrigPoly::is_zero(double tol) const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [tol](cplx c) { return std::abs(c) <= tol; });
}

cplx TrigPoly::operator()(double xi) const {
  // e^{imξ} by recurrence, resynchronised from the exact phase every 32 terms
  // so the accumulated rounding stays bounded at high degree.
  const cplx step = std::polar(1.0, xi);
  cplx sum = 0.0;
  cplx z;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i % 32 == 0) {
      const double m = static_cast<double>(m_min_) + static_cast<double>(i);
      z = std::polar(1.0, std::remainder(m * xi, kTwoPi));
    } else {
      z *= step;
    }
    sum += coeffs_[i] * z;
  }
  return sum;
}

TrigPoly TrigPoly::trimmed(double tol) const {
  std::size_t lo = 0;
  std::size_t hi = coeffs_.size();
  while (lo < hi && std::abs(coeffs_[lo]) <= tol) ++lo;
  while (hi > lo && std::abs(coeffs_[hi - 1]) <= tol) --hi;
  if (lo == hi) return TrigPoly();
  return TrigPoly(m_min_ + static_cast<int>(lo),
                  std::vector<cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo),
                                    coeffs_.begin() + static_cast<std::ptrdiff_t>(hi)));
}

TrigPoly TrigPoly::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  std::vector<cplx> out(coeffs_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const cplx im(0.0, static_cast<double>(m_min_ + static_cast<int>(i)));
    cplx f = 1.0;
    for (int k = 0; k < order; ++k) f *= im;
    out[i] *= f;
  }
  return TrigPoly(m_min_, std::move(out));
}

TrigPoly TrigPoly::conj_reflect() const {
  std::vector<cplx> out(coeffs_.rbegin(), coeffs_.rend());
  for (auto& c : out) c = std::conj(c);
  return TrigPoly(-m_max(), std::move(out));
}

TrigPoly TrigPoly::real_part() const { return 0.5 * (*this + conj_reflect()); }

TrigPoly TrigPoly::dilated(int factor) const {
  if (factor < 1) throw std::invalid_argument("dilated: factor must be positive");
  std::vector<cplx> out((coeffs_.size() - 1) * static_cast<std::size_t>(factor) + 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<std::size_t>(factor)] = coeffs_[i];
  return TrigPoly(m_min_ * factor, std::move(out));
}

TrigPoly TrigPoly::compressed(int factor, double tol) const {
  if (factor < 1) throw std::invalid_argument("compressed: factor must be positive");
  const TrigPoly t = trimmed(tol);
  for (int m = t.m_min(); m <= t.m_max(); ++m) {
    if (m % factor != 0 && std::abs(t.coeff(m)) > tol) {
      throw std::invalid_argument("compressed: exponent " + std::to_string(m) + " is not a multiple of " +
                                  std::to_string(factor));
    }
  }
  // Floor division keeps negative exponents on the right lattice point.
  auto fdiv = [factor](int m) { return m >= 0 ? m / factor : -((-m + factor - 1) / factor); };
  const int lo = fdiv(t.m_min() + factor - 1);
  const int hi = fdiv(t.m_max());
  if (lo > hi) return TrigPoly();
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) out[static_cast<std::size_t>(k - lo)] = t.coeff(k * factor);
  return TrigPoly(lo, std::move(out));
}

double TrigPoly::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double TrigPoly::max_abs_coeff() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

double TrigPoly::hermitian_defect() const noexcept {
  const int lim = degree();
  double d = 0.0;
  for (int m = -lim; m <= lim; ++m) d = std::max(d, std::abs(coeff(m) - std::conj(coeff(-m))));
  return d;
}

namespace {

TrigPoly combine(const TrigPoly& a, const TrigPoly& b, double sign) {
  const int lo = std::min(a.m_min(), b.m_min());
  const int hi = std::max(a.m_max(), b.m_max());
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
  for (int m = lo; m <= hi; ++m) out[static_cast<std::size_t>(m - lo)] = a.coeff(m) + sign * b.coeff(m);
  return TrigPoly(lo, std::move(out));
}

}  // namespace

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) { return combine(a, b, 1.0); }
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return combine(a, b, -1.0); }

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<cplx> out(ca.size() + cb.size() - 1, 0.0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0.0) continue;
    for (std::size_t k = 0; k < cb.size(); ++k) out[i + k] += ca[i] * cb[k];
  }
  return TrigPoly(a.m_min() + b.m_min(), std::move(out));
}

TrigPoly operator*(cplx s, const TrigPoly& p) {
  std::vector<cplx> out(p.coeffs());
  for (auto& c : out) c *= s;
  return TrigPoly(p.m_min(), std::move(out));
}

cplx eval_trig(const TrigPoly& p, double xi) { return p(xi); }

TrigPoly half_shift(const TrigPoly& p) {
  std::vector<cplx> out(p.coeffs());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if ((p.m_min() + static_cast<int>(i)) % 2 != 0) out[i] = -out[i];
  }
  return TrigPoly(p.m_min(), std::move(out));
}

TrigPoly abs_squared(const TrigPoly& p) {
  // r_k = Σ_n c_{n+k} conj(c_n); only k ≥ 0 is summed and r_{-k} = conj(r_k)
  // is imposed so the result is exactly Hermitian.
  const auto& c = p.coeffs();
  const int len = static_cast<int>(c.size());
  std::vector<cplx> out(static_cast<std::size_t>(2 * len - 1));
  for (int k = 0; k < len; ++k) {
    cplx r = 0.0;
    for (int n = 0; n + k < len; ++n) r += c[static_cast<std::size_t>(n + k)] * std::conj(c[static_cast<std::size_t>(n)]);
    if (k == 0) r = r.real();
    out[static_cast<std::size_t>(len - 1 + k)] = r;
    out[static_cast<std::size_t>(len - 1 - k)] = std::conj(r);
  }
  return TrigPoly(-(len - 1), std::move(out));
}

TrigPoly subqmf_symbol(const TrigPoly& p) {
  // |p(ξ+π)|² has coefficients (−1)^k r_k, so the sum doubles even lags and
  // cancels odd ones.
  TrigPoly r = abs_squared(p);
  std::vector<cplx> out(r.coeffs());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int k = r.m_min() + static_cast<int>(i);
    out[i] = (k % 2 == 0) ? 2.0 * out[i] : cplx(0.0);
  }
  return TrigPoly(r.m_min(), std::move(out)).trimmed();
}

// ---------------------------------------------------------------- grids

TorusGrid::TorusGrid(int size) : size_(size) {
  if (size < 2) throw std::invalid_argument("TorusGrid: size must be at least 2");
}

TorusGrid TorusGrid::for_degree(int degree) { return TorusGrid(default_grid_size(degree)); }

int default_grid_size(int degree) { return std::max(4096, 64 * degree); }

std::vector<cplx> eval_on_grid(const TrigPoly& p, const TorusGrid& grid) {
  const int g = grid.size();
  std::vector<cplx> folded(static_cast<std::size_t>(g), 0.0);
  for (int m = p.m_min(); m <= p.m_max(); ++m) {
    const int idx = ((m % g) + g) % g;
    folded[static_cast<std::size_t>(idx)] += p.coeff(m);
  }
  return detail::fft_backward(std::move(folded));
}

namespace {

struct Taylor {
  double v, d1, d2;
};

Taylor real_taylor(const TrigPoly& p, double xi) {
  Taylor t{0.0, 0.0, 0.0};
  for (int m = p.m_min(); m <= p.m_max(); ++m) {
    const cplx c = p.coeff(m);
    if (c == 0.0) continue;
    const cplx z = c * std::polar(1.0, std::remainder(static_cast<double>(m) * xi, kTwoPi));
    const double md = m;
    t.v += z.real();
    t.d1 += -md * z.imag();
    t.d2 += -md * md * z.real();
  }
  return t;
}

// Maximum of v + d1·t + d2·t²/2 over |t| ≤ h.
double quadratic_max(const Taylor& t, double h) {
  auto q = [&](double s) { return t.v + t.d1 * s + 0.5 * t.d2 * s * s; };
  double best = std::max(q(-h), q(h));
  if (t.d2 < 0) {
    const double s = -t.d1 / t.d2;
    if (std::fabs(s) <= h) best = std::max(best, q(s));
  }
  return best;
}

}  // namespace

Extremum grid_extremum(const TrigPoly& p, const TorusGrid& grid) {
  const int deg = p.degree();
  const int g = grid.size();
  if (static_cast<long long>(g) < 4LL * deg) {
    throw std::invalid_argument("grid_extremum: grid of size " + std::to_string(g) +
                                " is too coarse for degree " + std::to_string(deg) + " (need G >= 4*deg)");
  }
  const auto vals = eval_on_grid(p, grid);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double abs_max = 0.0;
  for (const auto& v : vals) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
    abs_max = std::max(abs_max, std::abs(v));
  }
  if (deg == 0) return {lo, hi, hi};

  // Rounding in the FFT and in direct evaluation is bounded by a small
  // multiple of the coefficient ℓ¹ norm.
  const double slack = 1e-14 * std::max(1.0, p.l1_norm());
  const double h0 = kPi / g;
  const double d = deg;
  // First-order Bernstein: sup|p| ≤ gridmax|p| / (1 − π·deg/G).
  const double sup_abs = abs_max / (1.0 - d * h0) + slack;
  const double third = d * d * d * sup_abs / 6.0;
  const double tol = 1e-12 * std::max(1.0, sup_abs);

  const TrigPoly dp = p.derivative(1);
  const TrigPoly d2p = p.derivative(2);
  const auto v1 = eval_on_grid(dp, grid);
  const auto v2 = eval_on_grid(d2p, grid);

  struct Cell {
    double center;
    double half;
    Taylor t;
  };
  std::vector<Cell> stack;
  double best = hi;
  double certified = hi;
  for (int k = 0; k < g; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    Cell c{grid.point(k), h0, {vals[i].real(), v1[i].real(), v2[i].real()}};
    const double bound = quadratic_max(c.t, c.half) + third * h0 * h0 * h0 + slack;
    if (bound > best + tol) stack.push_back(c);
  }

  constexpr int kMaxEvaluations = 100000;
  int evaluations = 0;
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    const double bound = quadratic_max(c.t, c.half) + third * c.half * c.half * c.half + slack;
    if (bound <= best + tol) continue;
    if (evaluations + 2 > kMaxEvaluations) {
      certified = std::max(certified, bound);
      continue;
    }
    for (double side : {-0.5, 0.5}) {
      Cell child{c.center + side * c.half, 0.5 * c.half, real_taylor(p, c.center + side * c.half)};
      ++evaluations;
      best = std::max(best, child.t.v);
      stack.push_back(child);
    }
  }
  certified = std::max(certified, best + tol);
  return {lo, std::max(hi, best), certified};
}

double max_imag_on_grid(const TrigPoly& p, const TorusGrid& grid) {
  double m = 0.0;
  for (const auto& v : eval_on_grid(p, grid)) m = std::max(m, std::fabs(v.imag()));
  return m;
}

void require_real_valued(const TrigPoly& p, const TorusGrid& grid, std::string_view what) {
  const double im = max_imag_on_grid(p, grid);
  if (!(im < 1e-10)) {
    throw AdmissibilityError(std::string(what) + " is not real-valued (max imaginary part " + std::to_string(im) +
                             " on the grid)");
  }
}

// ---------------------------------------------------------------- polylines

PiecewiseLinearPeriodic::PiecewiseLinearPeriodic(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2) throw std::invalid_argument("PiecewiseLinearPeriodic: need at least 2 nodes");
  if (nodes_.size() != values_.size()) throw std::invalid_argument("PiecewiseLinearPeriodic: size mismatch");
  if (nodes_.front() < 0.0 || nodes_.back() >= kTwoPi) {
    throw std::invalid_argument("PiecewiseLinearPeriodic: nodes must lie in [0, 2pi)");
  }
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    if (!(nodes_[k] > nodes_[k - 1])) throw std::invalid_argument("PiecewiseLinearPeriodic: nodes not increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("PiecewiseLinearPeriodic: non-finite value");
  }
}

PiecewiseLinearPeriodic PiecewiseLinearPeriodic::equispaced(std::vector<double> values) {
  if (values.size() < 2 || values.size() % 2 != 0) {
    throw std::invalid_argument("equispaced polyline needs an even number (>= 2) of values");
  }
  const double n = static_cast<double>(values.size() / 2);
  std::vector<double> nodes(values.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) nodes[k] = kPi * static_cast<double>(k) / n;
  return PiecewiseLinearPeriodic(std::move(nodes), std::move(values));
}

PiecewiseLinearPeriodic PiecewiseLinearPeriodic::with_values(std::vector<double> values) const {
  return PiecewiseLinearPeriodic(nodes_, std::move(values));
}

double PiecewiseLinearPeriodic::segment_length(std::size_t k) const {
  const std::size_t n = nodes_.size();
  return k + 1 < n ? nodes_[k + 1] - nodes_[k] : nodes_[0] + kTwoPi - nodes_[n - 1];
}

double PiecewiseLinearPeriodic::slope(std::size_t k) const {
  const std::size_t n = nodes_.size();
  return (values_[(k + 1) % n] - values_[k]) / segment_length(k);
}

double PiecewiseLinearPeriodic::operator()(double xi) const {
  const double x = wrap_angle(xi);
  const std::size_t n = nodes_.size();
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t k;
  double offset;
  if (it == nodes_.begin()) {
    k = n - 1;
    offset = x + kTwoPi - nodes_[k];
  } else {
    k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    offset = x - nodes_[k];
  }
  const double t = offset / segment_length(k);
  return values_[k] + t * (values_[(k + 1) % n] - values_[k]);
}

bool PiecewiseLinearPeriodic::has_zero_segment(double zero_tol) const {
  const std::size_t n = values_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (std::fabs(values_[k]) <= zero_tol && std::fabs(values_[(k + 1) % n]) <= zero_tol) return true;
  }
  return false;
}

std::vector<double> PiecewiseLinearPeriodic::roots(double zero_tol) const {
  if (has_zero_segment(zero_tol)) throw ConstructionError("polyline has a zero segment (infinitely many roots)");
  const std::size_t n = values_.size();
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = values_[k];
    const double b = values_[(k + 1) % n];
    if (std::fabs(a) <= zero_tol) {
      out.push_back(nodes_[k]);
      continue;
    }
    if (std::fabs(b) > zero_tol && (a > 0) != (b > 0)) {
      out.push_back(wrap_angle(nodes_[k] + segment_length(k) * a / (a - b)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace framelet
