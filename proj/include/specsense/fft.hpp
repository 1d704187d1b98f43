#pragma once

#include <complex>
#include <vector>

namespace specsense {

/// Unnormalized forward DFT. Radix-2 in-place when the size is a power of
/// two, plain O(n^2) DFT otherwise (segment sizes here are small).
void fft_forward(std::vector<std::complex<double>>& a);

}  // namespace specsense
