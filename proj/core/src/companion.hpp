#pragma once

#include <complex>
#include <vector>

namespace framelet::detail {

// Roots of a[0] + a[1] z + … + a[d] z^d (a[d] ≠ 0) as eigenvalues of the
// balanced companion matrix.
std::vector<std::complex<double>> companion_eigenvalues(const std::vector<std::complex<double>>& a);

}  // namespace framelet::detail
