#include "tns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace tns {

namespace {
std::mutex plan_mutex;
std::map<int, std::unique_ptr<Fft>>& plan_cache() {
  static std::map<int, std::unique_ptr<Fft>> cache;
  return cache;
}
}  // namespace

Fft::Fft(int n) : n_(n) {
  std::vector<std::complex<double>> probe(static_cast<size_t>(n) * n);
  auto* p = reinterpret_cast<fftw_complex*>(probe.data());
  fwd_ = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
}

const Fft& Fft::plan(int n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::unique_ptr<Fft>(new Fft(n))).first;
  return *it->second;
}

void Fft::forward(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), p, p);
}

void Fft::backward(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), p, p);
}

void Workspace::resize(int n) {
  const size_t m = static_cast<size_t>(n) * n;
  spec.resize(m);
  phys_a1.resize(m);
  phys_a2.resize(m);
  for (auto& g : phys_g) g.resize(m);
  phys_out.resize(m);
}

Workspace& workspace_for(int n) {
  thread_local std::map<int, Workspace> pool;
  Workspace& w = pool[n];
  w.resize(n);
  return w;
}

}  // namespace tns
