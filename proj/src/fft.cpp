#include "dkg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace dkg {

namespace {

// FFTW's planner is not thread safe; new-array execution on distinct buffers is.
std::mutex plan_mutex;

fftw_complex* as_fftw(cdouble* p) { return reinterpret_cast<fftw_complex*>(p); }

fftw_plan plan_3d(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  const auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n * n);
  fftw_plan p = fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

fftw_plan plan_time(int nt, long count, int sign) {
  static std::map<std::tuple<int, long, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  const auto key = std::make_tuple(nt, count, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(nt) * count);
  const int n[] = {nt};
  const int icount = static_cast<int>(count);
  fftw_plan p = fftw_plan_many_dft(1, n, icount, buf, nullptr, icount, 1, buf, nullptr,
                                   icount, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

}  // namespace

void dft3(cdouble* data, int n, int howmany, FftDir dir) {
  const int sign = dir == FftDir::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = plan_3d(n, sign);
  const long block = static_cast<long>(n) * n * n;
  for (int c = 0; c < howmany; ++c)
    fftw_execute_dft(p, as_fftw(data + c * block), as_fftw(data + c * block));
  if (dir == FftDir::forward) {
    const double scale = 1.0 / static_cast<double>(block);
    for (long i = 0; i < block * howmany; ++i) data[i] *= scale;
  }
}

void dft_time(cdouble* data, int nt, long count, FftDir dir) {
  const int sign = dir == FftDir::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = plan_time(nt, count, sign);
  fftw_execute_dft(p, as_fftw(data), as_fftw(data));
  if (dir == FftDir::forward) {
    const double scale = 1.0 / nt;
    for (long i = 0; i < nt * count; ++i) data[i] *= scale;
  }
}

}  // namespace dkg
