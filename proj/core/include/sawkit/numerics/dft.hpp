#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sawkit::numerics
{

enum class Direction
{
    forward,  // X_k = N^{-1/2} sum_n x_n exp(-2 pi i k n / N)
    inverse,  // x_n = N^{-1/2} sum_k X_k exp(+2 pi i k n / N)
};

// Unitary discrete Fourier transform of any length >= 2 (radix-2 for powers
// of two, Bluestein otherwise; O(N log N) either way). Throws ArgumentError
// for length 0 or 1.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> input, Direction direction);

} // namespace sawkit::numerics
