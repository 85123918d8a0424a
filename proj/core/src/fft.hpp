#pragma once

#include <complex>
#include <vector>

namespace framelet::detail {

// Unnormalized transforms of length data.size():
//   forward:  X_k = Σ_g x_g e^{-2πi kg/N}
//   backward: x_g = Σ_k X_k e^{+2πi kg/N}
std::vector<std::complex<double>> fft_forward(std::vector<std::complex<double>> data);
std::vector<std::complex<double>> fft_backward(std::vector<std::complex<double>> data);

}  // namespace framelet::detail
