#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "omt/budget.hpp"
#include "omt/matching.hpp"
#include "omt/rng.hpp"

namespace omt {

// Uniformly random permutation of 1..m (backward Fisher-Yates).
std::vector<Vertex> random_permutation(std::int64_t m, SeededSource& src);

// Uniformly random ordered r-matching of size n: shuffle 1..rn, cut into
// consecutive blocks of r, normalize. Every matching arises from exactly
// (r!)^n n! permutations, so the result is uniform.
OrderedMatching random_matching(std::int64_t n, int r, SeededSource& src);

// Visits every full r-matching on {1..rn} exactly once, in lexicographic
// order of edge lists (the smallest unused vertex always opens the next
// edge). Return false from the visitor to stop early. Throws BudgetError
// when count_matchings(n, r) exceeds budget.enumeration_cap.
void enumerate_matchings(std::int64_t n, int r,
                         const std::function<bool(const OrderedMatching&)>& visit,
                         const Budget& budget = {});

std::vector<OrderedMatching> all_matchings(std::int64_t n, int r, const Budget& budget = {});

} // namespace omt
