#pragma once

#include <vector>

#include "nilreg/common.hpp"

namespace nilreg {

// Rank of the sublattice generated by the rows, by exact fraction-free
// (Bareiss) elimination. Empty input has rank 0.
int lattice_rank(const IntMat& rows);
int lattice_rank(const std::vector<std::vector<Int>>& rows);

}  // namespace nilreg
