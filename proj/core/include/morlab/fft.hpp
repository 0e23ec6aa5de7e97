#pragma once

#include <complex>
#include <vector>

namespace morlab {

using Complex = std::complex<double>;

// Unnormalized multi-dimensional DFT of a row-major array, in place.
// forward: X_k = sum_j x_j e^{-2 pi i k.j/m}; the inverse omits the 1/N.
void fft_inplace(std::vector<Complex>& data, const std::vector<int>& dims,
                 bool inverse);

}  // namespace morlab
