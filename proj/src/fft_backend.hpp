#pragma once

// Thin FFTW wrapper. Plans are cached per shape and executed through the
// new-array interface, so callers own their buffers and concurrent execution
// is safe.

#include <complex>
#include <cstddef>

namespace skdv::detail {

enum class Direction { forward, backward };

// Unnormalised 1-D DFT, in != out.
void fft_1d(const std::complex<double>* in, std::complex<double>* out, std::size_t n, Direction dir);

// Unnormalised 2-D DFT of a row-major rows x cols array, in != out.
void fft_2d(const std::complex<double>* in, std::complex<double>* out, std::size_t rows, std::size_t cols,
            Direction dir);

}  // namespace skdv::detail
