#pragma once

#include <span>

namespace gifs {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

// Ordinary least squares y = intercept + slope * x. With fewer than three
// points the standard error is reported as zero.
LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace gifs
