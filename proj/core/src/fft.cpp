#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace framelet::detail {
namespace {

// FFTW's planner is not reentrant; execution of a finished plan is.
std::mutex planner_mutex;

std::vector<std::complex<double>> transform(std::vector<std::complex<double>> data, int sign) {
  if (data.empty()) return data;
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  return data;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(std::vector<std::complex<double>> data) {
  return transform(std::move(data), FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_backward(std::vector<std::complex<double>> data) {
  return transform(std::move(data), FFTW_BACKWARD);
}

}  // namespace framelet::detail
