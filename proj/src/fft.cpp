#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace berezin::detail {

namespace {
// The FFTW planner is not thread-safe; execution on distinct arrays is.
std::mutex planner_mutex;
}  // namespace

void dft_inplace(CVector& data, const std::vector<int>& shape, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace berezin::detail
