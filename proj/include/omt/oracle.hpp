#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omt/budget.hpp"
#include "omt/counting.hpp"
#include "omt/matching.hpp"

namespace omt {

// A sub-matching in which every edge pair realizes the same pattern.
struct CliqueCertificate {
    Pattern pattern;
    std::vector<std::int64_t> members; // ascending edge indices
};

struct CliqueResult {
    std::int64_t size = 0;
    CliqueCertificate cert;
};

struct TwinsResult {
    std::int64_t size = 0;
    TwinsCertificate cert;
};

struct PermutationTwins {
    std::int64_t size = 0;
    std::vector<std::int64_t> left;  // ascending 0-based positions
    std::vector<std::int64_t> right;
};

enum class ExtremalQuantity { twins, clique, tau };

// Minimum over all instances of an instance-level maximum, with a witness.
struct ExtremalRecord {
    ExtremalQuantity quantity;
    int rank = 0;
    std::int64_t size = 0;
    std::int64_t value = 0;
    std::string witness_word;
};

// Exact maximum twins size t(M) and a witness. Searches k from floor(n/2)
// down, grouping k-subsets of edges by canonical form and looking for two
// disjoint subsets in one class; the first hit is optimal.
TwinsResult max_twins_exact(const OrderedMatching& m, const Budget& budget = {});

// True iff M contains twins of size exactly k (hence of any size <= k).
bool has_twins_of_size(const OrderedMatching& m, std::int64_t k);

// Largest k such that t pairwise disjoint, pairwise isomorphic sub-matchings
// of size k exist (t = 2 recovers max_twins_exact).
std::int64_t max_tuplets_exact(const OrderedMatching& m, int t, const Budget& budget = {});

// Exact largest P-clique via maximum clique on the pattern compatibility graph.
CliqueResult max_clique_exact(const OrderedMatching& m, const Pattern& p, const Budget& budget = {});

// Exact L(M) = max over all patterns of the given rank.
CliqueResult max_clique_exact_all(const OrderedMatching& m, const Budget& budget = {});

// Exact maximum size of two disjoint order-isomorphic subsequences.
PermutationTwins tau_exact(const Permutation& pi, const Budget& budget = {});

bool has_permutation_twins_of_size(std::span<const std::int64_t> values, std::int64_t k);

// Exact number of unordered pairs of disjoint isomorphic k-edge sub-matchings.
BigInt twin_pair_count(const OrderedMatching& m, std::int64_t k);

// Scans every instance (all r-matchings of size n, or all permutations of
// length n for tau) and returns the extremal minimum with a witness.
ExtremalRecord extremal_scan(ExtremalQuantity q, int r, std::int64_t n, const Budget& budget = {});

} // namespace omt
