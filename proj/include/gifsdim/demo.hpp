#pragma once

#include <string>

namespace gifs {

// Built-in 3-D demo family behind the `example-r3` CLI command: one edge
// carries a rotation-scaling block perturbed by an axis-aligned stretch,
// two companion similitudes keep the images strongly separated. All three
// maps contract by about r; r must stay in (0, 0.42] for the images to fit.
std::string example_r3_spec_text(double r = 0.4);

// Closed-form quasiregularity constant of the perturbed map:
// 2*sqrt(2) * (eps^2 + eps + 1)^(3/4) / (eps + 2)^(3/2); equals 1 at eps = 0
// and grows like 1 + (9/16) eps^2.
double example_r3_closed_K(double eps);

}  // namespace gifs
