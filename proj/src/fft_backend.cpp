#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace skdv::detail {
namespace {

using Key = std::tuple<std::size_t, std::size_t, int>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }

  // The planner is not thread safe; execution with fresh arrays is.
  fftw_plan get(std::size_t rows, std::size_t cols, Direction dir) {
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find({rows, cols, sign});
    if (it != plans.end()) return it->second;
    std::vector<std::complex<double>> a(rows * cols), b(rows * cols);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = rows == 1 ? fftw_plan_dft_1d(static_cast<int>(cols), pa, pb, sign, flags)
                            : fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), pa, pb, sign, flags);
    plans.emplace(Key{rows, cols, sign}, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(fftw_plan p, const std::complex<double>* in, std::complex<double>* out) {
  // FFTW does not write to the input of an out-of-place complex transform.
  auto* i = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
  fftw_execute_dft(p, i, reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft_1d(const std::complex<double>* in, std::complex<double>* out, std::size_t n, Direction dir) {
  run(cache().get(1, n, dir), in, out);
}

void fft_2d(const std::complex<double>* in, std::complex<double>* out, std::size_t rows, std::size_t cols,
            Direction dir) {
  run(cache().get(rows, cols, dir), in, out);
}

}  // namespace skdv::detail
