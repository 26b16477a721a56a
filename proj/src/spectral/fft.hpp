#pragma once

#include <span>

// Real trigonometric transforms on the grid x_j = 2*pi*j/M, backed by FFTW.

namespace cgwave::fft {

/// Coefficients a_0..a_N and b_1..b_N of the interpolant of `samples`. Requires samples.size() >= 2N+1.
void forward(std::span<const double> samples, std::span<double> a, std::span<double> b);

/// Samples of a_0 + sum a_n cos(nx) + b_n sin(nx) on `out.size()` points.
/// `b` holds b_1..b_N or is empty (even function). Falls back to direct summation when
/// the grid cannot resolve every mode.
void inverse(std::span<const double> a, std::span<const double> b, std::span<double> out);

}  // namespace cgwave::fft
