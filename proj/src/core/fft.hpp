#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace alphadisk {

// Real <-> half-complex transforms of fixed length n, backed by FFTW.
// forward: X_k = sum_j x_j e^{-2 pi i jk/n}, k = 0..n/2
// inverse: x_j = sum over the Hermitian extension of X_k e^{+2 pi i jk/n}
// Plans use FFTW_ESTIMATE so results are reproducible run to run.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  void forward(const double* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

// Two-dimensional real transform on an n0 x n1 row-major array.
class RealFft2d {
 public:
  RealFft2d(int n0, int n1);
  ~RealFft2d();
  RealFft2d(const RealFft2d&) = delete;
  RealFft2d& operator=(const RealFft2d&) = delete;

  // out has n0 * (n1/2 + 1) entries.
  void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) const;

 private:
  struct Plan;
  int n0_, n1_;
  std::unique_ptr<Plan> plan_;
};

}  // namespace alphadisk
