#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omt/errors.hpp"

namespace omt {

using Vertex = std::int64_t;

// An ordered r-matching: n pairwise disjoint edges of r vertices each on a
// linearly ordered ground set. Edges are kept sorted internally and listed
// by leftmost vertex. A *full* matching of size n occupies exactly {1..rn};
// sub-matchings may sit on any ascending set of positions.
//
// Ranks >= 1 are accepted: rank-1 matchings appear as prefix/suffix
// projections inside the constructive finders even though the public word
// formats only ever produce rank >= 2.
class OrderedMatching {
public:
    OrderedMatching() = default;
    OrderedMatching(int rank, std::vector<Vertex> flat_vertices);

    static OrderedMatching from_edges(int rank, const std::vector<std::vector<Vertex>>& edges);

    int rank() const { return rank_; }
    std::int64_t size() const { return rank_ == 0 ? 0 : static_cast<std::int64_t>(verts_.size()) / rank_; }
    std::int64_t vertex_count() const { return static_cast<std::int64_t>(verts_.size()); }

    std::span<const Vertex> edge(std::int64_t i) const {
        return {verts_.data() + i * rank_, static_cast<std::size_t>(rank_)};
    }
    const std::vector<Vertex>& flat() const { return verts_; }

    // True iff the vertex set is exactly {1, ..., r*n}.
    bool is_full() const;

    // Sub-matching induced by the given ascending edge indices (positions kept).
    OrderedMatching induced(std::span<const std::int64_t> edge_indices) const;

    // Order-isomorphic copy on {1, ..., r*n}.
    OrderedMatching canonicalized() const;

    bool operator==(const OrderedMatching&) const = default;

private:
    int rank_ = 0;
    std::vector<Vertex> verts_; // edge i occupies [i*rank, (i+1)*rank), each ascending
};

// Order type of two disjoint same-rank edges, as a two-letter word of length
// 2r starting with A (the edge with the smaller leftmost vertex).
class Pattern {
public:
    Pattern() = default;
    Pattern(int rank, std::uint64_t later_edge_mask);

    static Pattern parse(std::string_view word);

    int rank() const { return rank_; }
    std::uint64_t mask() const { return mask_; }
    std::string word() const;

    bool operator==(const Pattern&) const = default;
    // Lexicographic order of the words (A < B).
    std::strong_ordering operator<=>(const Pattern& other) const;

private:
    int rank_ = 0;
    std::uint64_t mask_ = 0; // bit p set => merged position p belongs to the later edge
};

struct TwinsCertificate {
    std::vector<std::int64_t> left;  // ascending edge indices
    std::vector<std::int64_t> right; // ascending edge indices, disjoint from left
    std::int64_t size = 0;           // |left| == |right|
};

struct Permutation {
    std::vector<std::int64_t> values; // each of 1..m exactly once

    explicit Permutation(std::vector<std::int64_t> v);
    Permutation() = default;

    std::int64_t length() const { return static_cast<std::int64_t>(values.size()); }
};

// --- words -----------------------------------------------------------------

// Word of a matching: letters A, B, ... assigned by leftmost vertex when
// n <= 26, whitespace-separated numeric tokens 1, 2, ... otherwise. Only the
// relative order of positions matters, so this is also the canonical form.
std::string to_word(const OrderedMatching& m);

// Canonical form of a (sub-)matching: the word of its order-isomorphic copy.
// Two (sub-)matchings are isomorphic iff their canonical forms are equal.
std::string canonical_form(const OrderedMatching& m);
std::string canonical_form(const OrderedMatching& m, std::span<const std::int64_t> edge_indices);

// Per-position edge labels of the induced sub-matching, packed into a string
// usable as a hash key. Cheaper than building words when grouping subsets.
std::string canonical_key(const OrderedMatching& m, std::span<const std::int64_t> edge_indices);

// Parses a word: every distinct symbol must occur the same number r >= 2 of
// times. Letter form ("AABB") and token form ("1 1 2 2") are both accepted.
OrderedMatching parse_word(std::string_view text);

// --- patterns ----------------------------------------------------------------

// Pattern realized by two disjoint edges of equal rank; the edge with the
// smaller leftmost vertex plays A regardless of argument order.
Pattern pattern_of(std::span<const Vertex> e, std::span<const Vertex> f);
Pattern pattern_of(const OrderedMatching& m, std::int64_t i, std::int64_t j);

// All patterns of a given rank in lexicographic word order; exactly
// C(2r, r)/2 of them. Requires r >= 2 (rank-1 has the single pattern AB).
std::vector<Pattern> enumerate_patterns(int r);

// --- twins -------------------------------------------------------------------

// Checks that `left` and `right` are disjoint equal-size edge-index sets whose
// induced sub-matchings are isomorphic; throws VerifyError otherwise.
TwinsCertificate verify_twins(const OrderedMatching& m,
                              std::vector<std::int64_t> left,
                              std::vector<std::int64_t> right);

// --- permutations -------------------------------------------------------------

// Ranks of a sequence of distinct values, 1-based ("standardization").
std::vector<std::int32_t> standardize(std::span<const std::int64_t> values);

Permutation parse_permutation(std::string_view text);

// --- JSON exchange --------------------------------------------------------------

std::string matching_to_json(const OrderedMatching& m);
OrderedMatching matching_from_json(std::string_view text);

} // namespace omt
