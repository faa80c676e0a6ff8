#pragma once

#include <cstdint>
#include <vector>

#include "cluster_reduce/matrix.hpp"

namespace cluster_reduce {

/// Positive rational point whose coordinates are a/b with a, b uniform in
/// [1, 1000]. Each (seed, index) pair owns an independent generator, so
/// checks may be split across threads without changing the points drawn.
std::vector<Rational> random_positive_point(std::uint64_t seed, std::uint64_t index, std::size_t dim);

}  // namespace cluster_reduce
