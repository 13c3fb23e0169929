#include "core/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "core/error.hpp"

namespace alphadisk {

namespace {
// FFTW's planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
};

RealFft::RealFft(int n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw DomainError("RealFft: length must be >= 2");
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->real = fftw_alloc_real(n);
  plans_->spec = fftw_alloc_complex(n / 2 + 1);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->spec, flags);
  plans_->inverse =
      fftw_plan_dft_c2r_1d(n, plans_->spec, plans_->real, flags | FFTW_DESTROY_INPUT);
  if (!plans_->forward || !plans_->inverse) throw NumericalError("RealFft: planning failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->inverse);
  fftw_free(plans_->real);
  fftw_free(plans_->spec);
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  // r2c does not modify its input.
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(const std::complex<double>* in, double* out) const {
  std::vector<std::complex<double>> scratch(in, in + n_ / 2 + 1);
  fftw_execute_dft_c2r(plans_->inverse, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out);
}

struct RealFft2d::Plan {
  fftw_plan plan = nullptr;
};

RealFft2d::RealFft2d(int n0, int n1) : n0_(n0), n1_(n1), plan_(std::make_unique<Plan>()) {
  if (n0 < 2 || n1 < 2) throw DomainError("RealFft2d: dimensions must be >= 2");
  std::lock_guard<std::mutex> lock(planner_mutex());
  double* in = fftw_alloc_real(static_cast<std::size_t>(n0) * n1);
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n0) * (n1 / 2 + 1));
  plan_->plan = fftw_plan_dft_r2c_2d(n0, n1, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  if (!plan_->plan) throw NumericalError("RealFft2d: planning failed");
}

RealFft2d::~RealFft2d() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan_->plan);
}

void RealFft2d::forward(const std::vector<double>& in,
                        std::vector<std::complex<double>>& out) const {
  const std::size_t n = static_cast<std::size_t>(n0_) * n1_;
  if (in.size() != n) throw DomainError("RealFft2d: input size mismatch");
  out.resize(static_cast<std::size_t>(n0_) * (n1_ / 2 + 1));
  std::vector<double> copy(in);
  fftw_execute_dft_r2c(plan_->plan, copy.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace alphadisk
