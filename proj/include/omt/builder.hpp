#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "omt/budget.hpp"
#include "omt/counting.hpp"
#include "omt/matching.hpp"
#include "omt/oracle.hpp"

namespace omt {

// Knobs for the polynomial-time constructive finders.
struct BuilderParams {
    std::int64_t clique_exact_max = 64; // clique_find switches to greedy above this
    std::int64_t perm_exact_max = 12;   // permutation_twins switches to monotone split above this
    bool exact_block_matching = false;  // exact max matching in the block hypergraph
    std::int64_t exact_block_matching_max = 24;
};

// Edge histogram against the first half H1 = {1 .. floor(rn/2)} of the ground
// set: counts[p] = number of edges with exactly p vertices in H1.
struct HalfSplit {
    std::vector<std::int64_t> counts; // index 0..r
    std::int64_t half_size = 0;       // floor(rn/2)
};

HalfSplit split_counts(const OrderedMatching& m);

// Blocks of `a` consecutive integers over {1..rn} (last block short when a
// does not divide rn). An edge is a block transversal when it meets r
// distinct blocks; hyperedges collect signatures with >= 2 witness edges.
struct BlockHypergraph {
    std::int64_t block_size = 0;  // a
    std::int64_t block_count = 0; // ceil(rn/a)
    // signature (ascending block indices) -> witness edge indices, >= 2 each
    std::vector<std::pair<std::vector<std::int32_t>, std::vector<std::int64_t>>> hyperedges;
    std::int64_t pair_count = 0;  // sum over signatures of C(#witnesses, 2)
    std::int64_t edge_count = 0;  // number of hyperedges
    std::map<std::int64_t, std::int64_t> degree_histogram; // degree d -> #blocks of degree d
};

BlockHypergraph build_block_hypergraph(const OrderedMatching& m, std::int64_t a);

// Block size used by AUTO: round(beta n^((r-1)/(r+1))) with
// beta = (20 e r!)^(-1/(r+1)), clamped to [2, rn].
std::int64_t auto_block_size(std::int64_t n, int r);

inline constexpr std::int64_t kAutoBlockSize = -1;

// Twins from a matching in the block hypergraph: hyperedges are selected
// greedily in lexicographic signature order (or exactly when configured) and
// each selected signature contributes its first two witnesses.
TwinsCertificate block_twin_finder(const OrderedMatching& m, std::int64_t a = kAutoBlockSize,
                                   const BuilderParams& params = {});

// Always returns a valid clique: exact search below the exact budget, else a
// greedy left-to-right sweep per pattern keeping the best result.
CliqueCertificate clique_find(const OrderedMatching& m, const BuilderParams& params = {});

// Two disjoint order-isomorphic subsequences of a sequence of distinct
// values: exact for short inputs, otherwise a longest monotone subsequence
// split in half (size >= floor(ceil(sqrt(m))/2)).
PermutationTwins permutation_twins(std::span<const std::int64_t> values,
                                   const BuilderParams& params = {});

// Recursive constructive twin finder. Runs every applicable branch of the
// half-split case analysis (concatenation of the two inner halves, clique on
// the p-vertex side of the straddling edges combined with twins of the
// remainders, plus a whole-matching clique split) and returns the largest
// certificate; every returned certificate passes verify_twins.
TwinsCertificate find_twins_recursive(const OrderedMatching& m, const BuilderParams& params = {});

// Numeric lower-bound recursion. `deterministic_exponent` rows pair each rank
// with the guaranteed exponent, the clique-only exponent 1/(2^r - 1), and the
// random-model exponent 2/(r+1), all as exact rationals.
struct BoundRow {
    int rank = 0;
    BigRat deterministic_exponent;
    BigRat clique_only_exponent;
    BigRat random_exponent;
};

struct BoundResult {
    double beta_r = 0;
    double bound_value = 0;     // beta_r (n/6r)^(alpha eta_{r-1}); beta (n/4)^alpha for r = 2
    std::int64_t guaranteed = 0; // floor(bound_value), never negative
    std::vector<BoundRow> exponents; // ranks 2..r
};

BoundResult bound_calculator(std::int64_t n, int r, const BigRat& alpha = BigRat(3, 5),
                             const BigRat& beta = BigRat(1, 8));

} // namespace omt
