#pragma once

#include <complex>
#include <span>
#include <vector>

namespace svr::detail {

/// In-place iterative radix-2 FFT. Size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

/// Full linear convolution (length |a| + |b| - 1) via FFT.
std::vector<double> convolve_full(std::span<const float> a, std::span<const float> b);

}  // namespace svr::detail
