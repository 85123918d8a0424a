#include "companion.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <string>

#include "framelet/error.hpp"

namespace framelet::detail {

using cplx = std::complex<double>;

std::vector<cplx> companion_eigenvalues(const std::vector<cplx>& a) {
  // a[0] + a[1] z + … + a[d] z^d with a[d] ≠ 0; Frobenius companion matrix in
  // upper Hessenberg form, column-major.
  const lapack_int d = static_cast<lapack_int>(a.size()) - 1;
  std::vector<lapack_complex_double> h(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), {0.0, 0.0});
  auto at = [&](lapack_int r, lapack_int c) -> lapack_complex_double& {
    return h[static_cast<std::size_t>(c) * static_cast<std::size_t>(d) + static_cast<std::size_t>(r)];
  };
  const cplx lead = a[static_cast<std::size_t>(d)];
  for (lapack_int c = 0; c < d; ++c) {
    const cplx v = -a[static_cast<std::size_t>(d - 1 - c)] / lead;
    at(0, c) = {v.real(), v.imag()};
  }
  for (lapack_int r = 1; r < d; ++r) at(r, r - 1) = {1.0, 0.0};

  lapack_int ilo = 1;
  lapack_int ihi = d;
  std::vector<double> scale(static_cast<std::size_t>(d));
  if (LAPACKE_zgebal(LAPACK_COL_MAJOR, 'S', d, h.data(), d, &ilo, &ihi, scale.data()) != 0) {
    throw ConstructionError("root finder: balancing failed");
  }
  std::vector<lapack_complex_double> w(static_cast<std::size_t>(d));
  const lapack_int info =
      LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', d, ilo, ihi, h.data(), d, w.data(), nullptr, 1);
  if (info != 0) throw ConstructionError("root finder: QR iteration did not converge (info " + std::to_string(info) + ")");
  std::vector<cplx> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i];
  return out;
}

}  // namespace framelet::detail
