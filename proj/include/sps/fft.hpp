#pragma once

#include <complex>
#include <vector>

namespace sps {

// Thin wrapper around FFTW's complex 2D transforms with a process-wide plan
// cache keyed by transform size. Plans are created with FFTW_ESTIMATE so
// results are reproducible run to run; plan creation is serialized behind a
// mutex, execution is safe from multiple threads on distinct buffers.
//
// Conventions: fft2 is unnormalized, ifft2 carries the 1/n^2 factor, so
// ifft2(fft2(u)) == u up to roundoff.
void fft2(std::vector<std::complex<double>>& data, int n);
void ifft2(std::vector<std::complex<double>>& data, int n);

}  // namespace sps
