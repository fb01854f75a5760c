#pragma once

#include <vector>

#include "confree/rational.hpp"

namespace confree {

/// Exact rank of a rational matrix (rows of equal width), via fraction-free
/// Bareiss elimination over the integers after clearing denominators per row.
int exact_rank(std::vector<std::vector<Rational>> rows);

}  // namespace confree
