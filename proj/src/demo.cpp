#include "gifsdim/demo.hpp"

#include <cmath>
#include <cstdio>

#include "gifsdim/linalg.hpp"

namespace gifs {

std::string example_r3_spec_text(double r) {
  if (!(r > 0 && r <= 0.42))
    throw Error(Error::Kind::input, "demo ratio r must lie in (0, 0.42]");
  const double s3_4 = std::sqrt(3.0) / 4.0;

  char buf[2048];
  std::snprintf(
      buf, sizeof buf,
      "# built-in 3-D demo family: edge e0 mixes a rotation-scaling block with an\n"
      "# axis-aligned stretch of first order in eps; e1 and e2 are similitudes\n"
      "# placed so the three images are pairwise separated\n"
      "gifs 1 dim=3 order=1\n"
      "vertex v J=-1,-1,-1|1,1,1 O=-1.25,-1.25,-1.25|1.25,1.25,1.25\n"
      "edge e0 v v\n"
      "edge e1 v v\n"
      "edge e2 v v\n"
      "map e0 k=0 M=%.17g,0,0,0,%.17g,%.17g,0,%.17g,%.17g a=-0.6,-0.6,-0.6\n"
      "map e0 k=1 M=%.17g,0,0,0,%.17g,0,0,0,%.17g a=0,0,0\n"
      "map e1 k=0 M=%.17g,0,0,0,%.17g,0,0,0,%.17g a=0.6,0.6,0.6\n"
      "map e2 k=0 M=%.17g,0,0,0,%.17g,0,0,0,%.17g a=0.6,-0.6,0.6\n",
      r * 0.5, r * 0.25, -r * s3_4, r * s3_4, r * 0.25,  // e0 base
      r * 0.25, r * 0.5, r * 0.5,                        // e0 first-order stretch
      r, r, r,                                           // e1
      r, r, r);                                          // e2
  return buf;
}

double example_r3_closed_K(double eps) {
  return 2.0 * std::sqrt(2.0) * std::pow(eps * eps + eps + 1.0, 0.75) /
         std::pow(eps + 2.0, 1.5);
}

}  // namespace gifs
