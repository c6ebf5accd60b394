#include "bo2d/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace bo2d::fft {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per shape and kept for the process.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n0, std::size_t n1, Direction dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n0, n1, dir == Direction::forward);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    auto* scratch = fftw_alloc_complex(n0 * n1);
    fftw_plan plan =
        n1 == 0 ? fftw_plan_dft_1d(static_cast<int>(n0), scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED)
                : fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1), scratch, scratch,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_complex* as_fftw(std::span<cplx> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

void dft2(std::span<cplx> data, std::size_t n0, std::size_t n1, Direction dir) {
  fftw_plan plan = cache().get(n0, n1, dir);
  fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
}

void dft1(std::span<cplx> data, Direction dir) {
  fftw_plan plan = cache().get(data.size(), 0, dir);
  fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
}

std::size_t good_size(std::size_t n) {
  auto smooth = [](std::size_t m) {
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (m % p == 0) m /= p;
    return m == 1;
  };
  std::size_t m = n + (n % 2);
  while (!smooth(m)) m += 2;
  return m;
}

const char* backend_version() { return fftw_version; }

}  // namespace bo2d::fft
