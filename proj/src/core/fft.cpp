#include "core/fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <utility>

#include "rotor/error.hpp"

namespace rotor::detail {

FftBuffer::FftBuffer(std::size_t size)
    : size_(size), data_(fftw_alloc_complex(size)) {
  if (data_ == nullptr) throw std::bad_alloc();
}

FftBuffer::~FftBuffer() {
  if (data_ != nullptr) fftw_free(data_);
}

FftBuffer::FftBuffer(FftBuffer&& other) noexcept
    : size_(std::exchange(other.size_, 0)), data_(std::exchange(other.data_, nullptr)) {}

FftBuffer& FftBuffer::operator=(FftBuffer&& other) noexcept {
  if (this != &other) {
    if (data_ != nullptr) fftw_free(data_);
    size_ = std::exchange(other.size_, 0);
    data_ = std::exchange(other.data_, nullptr);
  }
  return *this;
}

std::span<std::complex<double>> FftBuffer::span() noexcept {
  // fftw_complex is layout-compatible with std::complex<double>.
  return {reinterpret_cast<std::complex<double>*>(data_), size_};
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  FftBuffer scratch(n);
  const int len = static_cast<int>(n);
  forward_ = fftw_plan_dft_1d(len, scratch.raw(), scratch.raw(), FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(len, scratch.raw(), scratch.raw(), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forward_ == nullptr || backward_ == nullptr) {
    throw Error(ErrorKind::validation, "FFTW could not plan a transform of size " + std::to_string(n));
  }
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
}

const FftPlan& FftPlan::get(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::unique_ptr<FftPlan>(new FftPlan(n))).first;
  }
  return *it->second;
}

void FftPlan::forward(FftBuffer& buf) const {
  if (buf.size() != n_) throw Error(ErrorKind::size_mismatch, "FFT buffer size mismatch");
  fftw_execute_dft(forward_, buf.raw(), buf.raw());
}

void FftPlan::backward(FftBuffer& buf) const {
  if (buf.size() != n_) throw Error(ErrorKind::size_mismatch, "FFT buffer size mismatch");
  fftw_execute_dft(backward_, buf.raw(), buf.raw());
}

}  // namespace rotor::detail
