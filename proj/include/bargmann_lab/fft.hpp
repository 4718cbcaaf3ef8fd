#pragma once

// Thin FFTW3 wrapper used by the spectral operations. Plans are cached per
// (size, direction) and executed with the new-array interface, so callers can
// hand in any buffer of the right length.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bargmann_lab::detail {

enum class FftDirection : int { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

class FftPlanCache
{
public:
  static FftPlanCache& instance()
  {
    static FftPlanCache cache;
    return cache;
  }

  FftPlanCache(const FftPlanCache&)            = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;

  // fftw_execute_dft is thread safe; only planning needs the lock.
  fftw_plan plan(std::size_t n, FftDirection dir)
  {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, static_cast<int>(dir));
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::vector<std::complex<double>> scratch_in(n), scratch_out(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(scratch_in.data()),
                                   reinterpret_cast<fftw_complex*>(scratch_out.data()),
                                   static_cast<int>(dir),
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr) throw std::runtime_error("fftw: failed to create plan");
    plans_.emplace(key, p);
    return p;
  }

  ~FftPlanCache()
  {
    for (auto& [key, p] : plans_) fftw_destroy_plan(p);
  }

private:
  FftPlanCache() = default;

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

/// Unitary DFT: out_k = n^{-1/2} sum_j in_j exp(-+ 2 pi i j k / n).
inline std::vector<std::complex<double>> unitary_dft(std::span<const std::complex<double>> in,
                                                     FftDirection dir)
{
  const std::size_t n = in.size();
  std::vector<std::complex<double>> src(in.begin(), in.end());
  std::vector<std::complex<double>> out(n);
  fftw_execute_dft(FftPlanCache::instance().plan(n, dir),
                   reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : out) z *= scale;
  return out;
}

}  // namespace bargmann_lab::detail
