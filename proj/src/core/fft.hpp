#pragma once

// Thin RAII layer over FFTW for the complex transforms of one basis size.
// Plans are created once per size under a lock and shared; execution uses
// the new-array interface on fftw_malloc'd buffers so the shared plan is
// valid for every buffer and results are independent of the calling thread.

#include <complex>
#include <cstddef>
#include <span>

#include <fftw3.h>

namespace rotor::detail {

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t size);
  ~FftBuffer();
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  FftBuffer(FftBuffer&& other) noexcept;
  FftBuffer& operator=(FftBuffer&& other) noexcept;

  std::size_t size() const noexcept { return size_; }
  std::span<std::complex<double>> span() noexcept;
  fftw_complex* raw() noexcept { return data_; }

 private:
  std::size_t size_;
  fftw_complex* data_;
};

class FftPlan {
 public:
  /// Cached in-place plans for size n (FFTW_ESTIMATE, deterministic).
  static const FftPlan& get(std::size_t n);

  /// out_b = sum_j in_j e^{-2 pi i j b / n} (unnormalized), in place.
  void forward(FftBuffer& buf) const;
  /// out_j = sum_b in_b e^{+2 pi i j b / n} (unnormalized), in place.
  void backward(FftBuffer& buf) const;

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan();

 private:
  explicit FftPlan(std::size_t n);

  std::size_t n_;
  fftw_plan forward_;
  fftw_plan backward_;
};

}  // namespace rotor::detail
