#pragma once

#include "qgopt/common.hpp"
#include "qgopt/registers.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace qgopt {

/// Cached FFTW plan pair for one transform length. Executes through a private
/// scratch buffer, so callers pass plain complex<double> spans with any stride.
class FftPlan {
public:
  explicit FftPlan(int n) : n_(n) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)));
    if (!buf_) throw capacity_error("FftPlan: allocation failed for n = " + std::to_string(n));
    fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  /// Unitary transform of n strided elements in place. forward = position to
  /// momentum (negative-exponent convention), scaled by 1/sqrt(n) either way.
  void execute(complexd* data, std::size_t stride, bool forward) {
    for (int i = 0; i < n_; ++i) {
      const complexd& v = data[static_cast<std::size_t>(i) * stride];
      buf_[i][0] = v.real();
      buf_[i][1] = v.imag();
    }
    fftw_execute(forward ? fwd_ : bwd_);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
    for (int i = 0; i < n_; ++i)
      data[static_cast<std::size_t>(i) * stride] = complexd(buf_[i][0], buf_[i][1]) * scale;
  }

  int size() const { return n_; }

private:
  int n_;
  fftw_complex* buf_;
  fftw_plan fwd_, bwd_;
};

namespace detail {
// FFTW planning is not thread safe; plans are created under a lock and each
// thread keeps private clones keyed by length.
inline FftPlan& plan_for(int n) {
  static std::mutex mu;
  thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::lock_guard<std::mutex> lock(mu);
    it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
  }
  return *it->second;
}
} // namespace detail

/// Applies the unitary DFT along every electronic axis of a composite array
/// laid out as [geometry][axis_{A-1}]...[axis_0] with axis 0 fastest.
/// `n_blocks` is the number of geometry blocks (1 for a bare electronic state).
inline void transform_electronic(complexd* amp, const RegisterLayout& layout,
                                 std::uint64_t n_blocks, bool forward) {
  const int n = layout.points_per_axis();
  const int axes = layout.axes();
  const std::uint64_t dim_e = layout.electronic_dimension();
  FftPlan& plan = detail::plan_for(n);
  for (int a = 0; a < axes; ++a) {
    std::uint64_t stride = 1;
    for (int t = 0; t < a; ++t) stride *= static_cast<std::uint64_t>(n);
    const std::uint64_t group = stride * static_cast<std::uint64_t>(n);
    for (std::uint64_t blk = 0; blk < n_blocks; ++blk) {
      complexd* base = amp + blk * dim_e;
      for (std::uint64_t outer = 0; outer < dim_e / group; ++outer)
        for (std::uint64_t inner = 0; inner < stride; ++inner)
          plan.execute(base + outer * group + inner, stride, forward);
    }
  }
}

} // namespace qgopt
