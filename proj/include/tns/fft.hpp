#pragma once

#include <complex>
#include <vector>

namespace tns {

// Thin wrapper over FFTW 2D complex-to-complex transforms.
//
// Plans are created once per grid size with FFTW_ESTIMATE | FFTW_UNALIGNED,
// which keeps the chosen algorithm (and hence round-off) independent of run
// timing and buffer addresses; results are reproducible bit-for-bit for a
// given binary.  Plan creation is serialized internally; execution on
// distinct buffers is safe to run concurrently.
class Fft {
 public:
  static const Fft& plan(int n);

  // unnormalized; forward(physical) / n^2 yields Fourier coefficients of
  // e^{i k.x}, backward(coefficients) yields physical samples
  void forward(std::complex<double>* data) const;
  void backward(std::complex<double>* data) const;

  int size() const { return n_; }

 private:
  explicit Fft(int n);
  int n_;
  void* fwd_;  // fftw_plan
  void* bwd_;
};

// per-thread scratch buffers, reused between calls on the same grid size
struct Workspace {
  std::vector<std::complex<double>> spec;      // n^2 complex scratch
  std::vector<double> phys_a1, phys_a2;        // physical advecting field
  std::vector<double> phys_g[4];               // physical gradients
  std::vector<double> phys_out;                // physical product
  void resize(int n);
};

Workspace& workspace_for(int n);

}  // namespace tns
