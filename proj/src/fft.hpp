#pragma once

// Thin RAII layer over FFTW3 for the real-to-complex transforms used by both
// spectral modules. Plans are created under a process-wide lock, executed
// through the new-array interface on buffers owned by the plan itself.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dirmbo::fft {

template <class T>
class AlignedBuffer {
 public:
  AlignedBuffer() = default;
  explicit AlignedBuffer(std::size_t n)
      : data_(static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)))), size_(n) {
    if (!data_) throw std::bad_alloc();
  }
  AlignedBuffer(const AlignedBuffer&) = delete;
  AlignedBuffer& operator=(const AlignedBuffer&) = delete;
  AlignedBuffer(AlignedBuffer&& o) noexcept : data_(o.data_), size_(o.size_) {
    o.data_ = nullptr;
    o.size_ = 0;
  }
  AlignedBuffer& operator=(AlignedBuffer&& o) noexcept {
    std::swap(data_, o.data_);
    std::swap(size_, o.size_);
    return *this;
  }
  ~AlignedBuffer() {
    if (data_) fftw_free(data_);
  }

  T* data() { return data_; }
  const T* data() const { return data_; }
  std::size_t size() const { return size_; }
  std::span<T> span() { return {data_, size_}; }

 private:
  T* data_ = nullptr;
  std::size_t size_ = 0;
};

/// Forward r2c and backward c2r transforms of one fixed shape, either a single
/// multi-dimensional transform or a batch of 1-d transforms along the last axis.
class RealPlan {
 public:
  /// Multi-dimensional transform of an array with the given row-major shape.
  static RealPlan multi(std::span<const int> shape);
  /// howmany independent 1-d transforms of length n stored back to back.
  static RealPlan batch(int howmany, int n);

  RealPlan(const RealPlan&) = delete;
  RealPlan& operator=(const RealPlan&) = delete;
  RealPlan(RealPlan&&) noexcept;
  RealPlan& operator=(RealPlan&&) noexcept;
  ~RealPlan();

  std::span<double> real() { return real_.span(); }
  std::span<std::complex<double>> spectrum() {
    return {reinterpret_cast<std::complex<double>*>(spectrum_.data()), spectrum_.size()};
  }

  /// real() -> spectrum(), unnormalised.
  void forward();
  /// spectrum() -> real(), unnormalised; clobbers spectrum().
  void backward();

 private:
  RealPlan() = default;

  AlignedBuffer<double> real_;
  AlignedBuffer<fftw_complex> spectrum_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace dirmbo::fft
