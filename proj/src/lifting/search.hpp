#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "wittlift/group.hpp"
#include "wittlift/matrix.hpp"

namespace wl {

// rho(x s) = rho(x) rho(s) over the first `upto` generators; false on a relation clash
bool extend_images(const FiniteGroup& G, const std::vector<int>& gens, const std::vector<Mat>& imgs, int upto,
                   int d, i64 N, std::vector<Mat>& out);

// Backtracking over candidate generator images, pruning on the subgroup
// generated so far. Returns the matrices of all elements.
std::optional<std::vector<Mat>> search_images(const FiniteGroup& G, const std::vector<int>& gens,
                                              const std::vector<std::vector<Mat>>& cands, int d, i64 N,
                                              i64 budget);

}  // namespace wl
