#pragma once

#include <string>
#include <string_view>

#include "gifsdim/system.hpp"

namespace gifs {

// A parsed and validated system description. `family.order == 0` means the
// file describes a plain system; higher orders carry perturbation
// coefficients per edge.
struct SpecFile {
  PerturbedFamily family;
  std::string name;
};

// Line-oriented text format:
//   gifs 1 dim=<D> [order=<n>]
//   vertex <name> J=<low,...|high,...> O=<low,...|high,...>
//   edge <name> <from> <to>
//   map <edge> k=<0..n> M=<D*D row-major, comma separated> a=<D comma separated>
//   tail <geometric|polynomial> <scale> <rate>        (single-vertex systems)
//   # comment to end of line
// Every edge needs a k=0 map; missing k>=1 lines mean zero coefficients.
// Parse and validation errors carry the offending line number and field.
SpecFile parse_spec(std::string_view text, std::string name = "<string>");
SpecFile load_spec(const std::string& path);

}  // namespace gifs
