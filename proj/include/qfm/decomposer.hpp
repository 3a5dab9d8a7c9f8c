#pragma once

// Complete motivic decomposition over Q: global Tate summands from the Witt
// index, every global binary summand of the anisotropic core, and a
// non-binary remainder S of rank 0, 4, 6 or 8.

#include <string>
#include <vector>

#include "qfm/form.hpp"
#include "qfm/summand.hpp"

namespace qfm {

Decomposition decompose(const QuadraticForm& q);

// Matches the remainder twists against the allowed shapes. `odd` is the parity
// of dim q. Empty input gives an empty list.
std::vector<MotiveSummand> classify_remainder(std::vector<int> twists, bool odd, const SquareClass& disc);

// Fixed-width ASCII picture: dots for twists 0..dim-2 (the middle one stacked
// twice for even dim), arcs for binary summands, '=' bars for upper summands.
std::string vishik_diagram(const Decomposition& d);

}  // namespace qfm
