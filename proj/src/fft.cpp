#include "sps/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace sps {
namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plan_cache;  // (n, sign) -> plan

fftw_plan get_plan(int n, int sign, fftw_complex* buf) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  // FFTW_UNALIGNED lets the cached plan run on any buffer later.
  fftw_plan p = fftw_plan_dft_2d(n, n, buf, buf, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw plan creation failed");
  plan_cache.emplace(key, p);
  return p;
}

}  // namespace

void fft2(std::vector<std::complex<double>>& data, int n) {
  if (static_cast<int>(data.size()) != n * n)
    throw std::invalid_argument("fft2: buffer size does not match n*n");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(get_plan(n, FFTW_FORWARD, buf), buf, buf);
}

void ifft2(std::vector<std::complex<double>>& data, int n) {
  if (static_cast<int>(data.size()) != n * n)
    throw std::invalid_argument("ifft2: buffer size does not match n*n");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(get_plan(n, FFTW_BACKWARD, buf), buf, buf);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (auto& z : data) z *= scale;
}

}  // namespace sps
