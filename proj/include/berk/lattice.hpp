#pragma once

#include <vector>

#include "berk/valued_field.hpp"

namespace berk {

using IntVector = std::vector<Integer>;

/// Row Hermite normal form of the lattice spanned by `rows` (each of length
/// `ncols`): pivots positive, entries above a pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is a basis.
std::vector<IntVector> hermite_basis(std::vector<IntVector> rows, std::size_t ncols);

/// Basis (in Hermite form) of {x in Z^m : sum_i x_i * rows[i] = 0}.
std::vector<IntVector> left_kernel(const std::vector<IntVector>& rows, std::size_t ncols);

}  // namespace berk
