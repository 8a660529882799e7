#pragma once

#include <string>
#include <vector>

#include "shapegeo/common.hpp"

namespace shapegeo::svg {

struct StripFrame {
  ComplexVec points;
  bool closed = true;
  bool marked = false;  // drawn in red, e.g. frames on the bad set
  std::string label;
};

// Frames left to right in fixed square cells, each centered at its centroid, one scale
// for the whole strip. Closed curves are drawn closed; open curves get endpoint dots.
std::string strip(const std::vector<StripFrame>& frames, double cell = 160.0);

}  // namespace shapegeo::svg
