#include "fft.hpp"

#include <mutex>
#include <stdexcept>
#include <utility>

#include "dirmbo/threads.hpp"

namespace dirmbo::fft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void ensure_threads_initialised() {
  static const bool ok = [] {
    fftw_init_threads();
    fftw_make_planner_thread_safe();
    return true;
  }();
  (void)ok;
}

}  // namespace

RealPlan RealPlan::multi(std::span<const int> shape) {
  ensure_threads_initialised();
  RealPlan p;
  std::size_t real_size = 1;
  for (int s : shape) real_size *= static_cast<std::size_t>(s);
  const std::size_t spec_size = real_size / static_cast<std::size_t>(shape.back()) *
                                static_cast<std::size_t>(shape.back() / 2 + 1);
  p.real_ = AlignedBuffer<double>(real_size);
  p.spectrum_ = AlignedBuffer<fftw_complex>(spec_size);
  std::vector<int> dims(shape.begin(), shape.end());
  std::lock_guard lock(planner_mutex());
  fftw_plan_with_nthreads(max_threads());
  p.forward_ = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), p.real_.data(),
                                 p.spectrum_.data(), FFTW_ESTIMATE);
  p.backward_ = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), p.spectrum_.data(),
                                  p.real_.data(), FFTW_ESTIMATE);
  if (!p.forward_ || !p.backward_) throw std::runtime_error("FFTW failed to create a plan");
  return p;
}

RealPlan RealPlan::batch(int howmany, int n) {
  ensure_threads_initialised();
  RealPlan p;
  const int nc = n / 2 + 1;
  p.real_ = AlignedBuffer<double>(static_cast<std::size_t>(howmany) * n);
  p.spectrum_ = AlignedBuffer<fftw_complex>(static_cast<std::size_t>(howmany) * nc);
  std::lock_guard lock(planner_mutex());
  fftw_plan_with_nthreads(max_threads());
  p.forward_ = fftw_plan_many_dft_r2c(1, &n, howmany, p.real_.data(), nullptr, 1, n,
                                      p.spectrum_.data(), nullptr, 1, nc, FFTW_ESTIMATE);
  p.backward_ = fftw_plan_many_dft_c2r(1, &n, howmany, p.spectrum_.data(), nullptr, 1, nc,
                                       p.real_.data(), nullptr, 1, n, FFTW_ESTIMATE);
  if (!p.forward_ || !p.backward_) throw std::runtime_error("FFTW failed to create a plan");
  return p;
}

RealPlan::RealPlan(RealPlan&& o) noexcept
    : real_(std::move(o.real_)),
      spectrum_(std::move(o.spectrum_)),
      forward_(std::exchange(o.forward_, nullptr)),
      backward_(std::exchange(o.backward_, nullptr)) {}

RealPlan& RealPlan::operator=(RealPlan&& o) noexcept {
  std::swap(real_, o.real_);
  std::swap(spectrum_, o.spectrum_);
  std::swap(forward_, o.forward_);
  std::swap(backward_, o.backward_);
  return *this;
}

RealPlan::~RealPlan() {
  std::lock_guard lock(planner_mutex());
  if (forward_) fftw_destroy_plan(forward_);
  if (backward_) fftw_destroy_plan(backward_);
}

void RealPlan::forward() { fftw_execute(forward_); }

void RealPlan::backward() { fftw_execute(backward_); }

}  // namespace dirmbo::fft
