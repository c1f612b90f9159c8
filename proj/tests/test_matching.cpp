#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "omt/generate.hpp"
#include "omt/matching.hpp"
#include "omt/rng.hpp"

using namespace omt;

namespace {

std::vector<Vertex> edge_vec(const OrderedMatching& m, std::int64_t i) {
    auto e = m.edge(i);
    return {e.begin(), e.end()};
}

// The only order-preserving bijection between two equal-size vertex sets maps
// k-th smallest to k-th smallest; isomorphism holds iff it maps edges onto edges.
bool isomorphic_by_brute_force(const OrderedMatching& a, const OrderedMatching& b) {
    if (a.rank() != b.rank() || a.size() != b.size()) return false;
    std::vector<Vertex> va(a.flat()), vb(b.flat());
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    std::map<Vertex, Vertex> phi;
    for (std::size_t i = 0; i < va.size(); ++i) phi[va[i]] = vb[i];
    std::set<std::vector<Vertex>> b_edges;
    for (std::int64_t i = 0; i < b.size(); ++i) b_edges.insert(edge_vec(b, i));
    for (std::int64_t i = 0; i < a.size(); ++i) {
        std::vector<Vertex> image;
        for (Vertex v : a.edge(i)) image.push_back(phi[v]);
        if (!b_edges.count(image)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("parse_word reads the worked three-uniform example") {
    OrderedMatching m = parse_word("AABCBDBDACCD");
    CHECK(m.rank() == 3);
    CHECK(m.size() == 4);
    CHECK(edge_vec(m, 0) == std::vector<Vertex>{1, 2, 9});
    CHECK(edge_vec(m, 1) == std::vector<Vertex>{3, 5, 7});
    CHECK(edge_vec(m, 2) == std::vector<Vertex>{4, 10, 11});
    CHECK(edge_vec(m, 3) == std::vector<Vertex>{6, 8, 12});
    CHECK(m.is_full());
}

TEST_CASE("parse_word smallest word") {
    OrderedMatching m = parse_word("AA");
    CHECK(m.rank() == 2);
    CHECK(m.size() == 1);
    CHECK(edge_vec(m, 0) == std::vector<Vertex>{1, 2});
}

TEST_CASE("parse_word rejects bad input") {
    CHECK_THROWS_AS(parse_word("AAB"), ParseError);
    CHECK_THROWS_AS(parse_word("A"), ParseError);
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK_THROWS_AS(parse_word("   "), ParseError);
}

TEST_CASE("parse_word accepts numeric tokens") {
    OrderedMatching m = parse_word("1 1 2 2");
    CHECK(m.rank() == 2);
    CHECK(m.size() == 2);
    CHECK(to_word(m) == "AABB");
}

TEST_CASE("to_word of the worked example") {
    OrderedMatching m = OrderedMatching::from_edges(
        3, {{1, 2, 9}, {3, 5, 7}, {4, 10, 11}, {6, 8, 12}});
    CHECK(to_word(m) == "AABCBDBDACCD");
    CHECK(to_word(OrderedMatching::from_edges(2, {{1, 2}})) == "AA");
}

TEST_CASE("to_word switches to tokens for large matchings") {
    std::vector<std::vector<Vertex>> edges;
    for (Vertex i = 0; i < 30; ++i) edges.push_back({2 * i + 1, 2 * i + 2});
    OrderedMatching m = OrderedMatching::from_edges(2, edges);
    std::string w = to_word(m);
    CHECK(w.substr(0, 12) == "1 1 2 2 3 3 ");
    CHECK(w.substr(w.size() - 5) == "30 30");
    OrderedMatching back = parse_word(w);
    CHECK(back == m);
}

TEST_CASE("canonical_form certifies the twins of the introduction example") {
    OrderedMatching m = parse_word("AABCBDBDACCD");
    // letters B,D live at sorted indices 1,3; letters A,C at 0,2
    std::vector<std::int64_t> bd{1, 3}, ac{0, 2};
    CHECK(canonical_form(m, bd) == "AABABB");
    CHECK(canonical_form(m, ac) == "AABABB");
    std::vector<std::int64_t> single{0};
    CHECK(canonical_form(m, single) == "AAA");
}

TEST_CASE("pattern_of basic shapes") {
    std::vector<Vertex> e12{1, 2}, e34{3, 4}, e13{1, 3}, e24{2, 4};
    CHECK(pattern_of(e12, e34).word() == "AABB");
    CHECK(pattern_of(e13, e24).word() == "ABAB");
    std::vector<Vertex> a{1, 2, 9}, b{3, 5, 7};
    CHECK(pattern_of(a, b).word() == "AABBBA");
    // canonicalization: the earlier edge plays A regardless of argument order
    CHECK(pattern_of(b, a).word() == "AABBBA");
    std::vector<Vertex> c{2, 3};
    CHECK_THROWS_AS(pattern_of(e12, c), VerifyError);
}

TEST_CASE("enumerate_patterns counts and order") {
    auto p2 = enumerate_patterns(2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0].word() == "AABB");
    CHECK(p2[1].word() == "ABAB");
    CHECK(p2[2].word() == "ABBA");

    auto p3 = enumerate_patterns(3);
    CHECK(p3.size() == 10);
    std::set<std::string> got;
    for (const auto& p : p3) got.insert(p.word());
    const std::set<std::string> expected{"AAABBB", "AABABB", "AABBBA", "AABBAB", "ABBBAA",
                                         "ABBAAB", "ABBABA", "ABAABB", "ABABBA", "ABABAB"};
    CHECK(got == expected);
    // lexicographic and duplicate-free
    CHECK(std::is_sorted(p3.begin(), p3.end()));
    CHECK(std::adjacent_find(p3.begin(), p3.end()) == p3.end());

    CHECK(enumerate_patterns(4).size() == 35);
    CHECK_THROWS_AS(enumerate_patterns(1), ParseError);
}

TEST_CASE("verify_twins on the introduction example word") {
    OrderedMatching m = parse_word("AABECBDEEBDACCD");
    // original letters sorted by leftmost vertex: A, B, E, C, D
    TwinsCertificate cert = verify_twins(m, {0, 3}, {1, 4}); // {A,C} vs {B,D}
    CHECK(cert.size == 2);
    CHECK(verify_twins(m, {0}, {1}).size == 1);
    CHECK_THROWS_AS(verify_twins(m, {0}, {0}), VerifyError);
    CHECK_THROWS_AS(verify_twins(m, {0, 1}, {2}), VerifyError);
    CHECK_THROWS_AS(verify_twins(m, {0}, {99}), VerifyError);
    // AB vs AE are not isomorphic sub-matchings in this word
    bool not_iso = false;
    try {
        verify_twins(m, {0, 1}, {2, 3});
    } catch (const VerifyError& e) {
        not_iso = e.kind == VerifyError::Kind::not_isomorphic;
    }
    CHECK(not_iso);
}

TEST_CASE("roundtrip words over random matchings") {
    SeededSource src(20260810, 0);
    for (int iter = 0; iter < 200; ++iter) {
        const int r = 2 + static_cast<int>(src.next_below(3));
        const std::int64_t n = 1 + static_cast<std::int64_t>(src.next_below(40));
        OrderedMatching m = random_matching(n, r, src);
        OrderedMatching back = parse_word(to_word(m));
        CHECK(back == m);
        CHECK(verify_twins(m, {}, {}).size == 0);
    }
}

TEST_CASE("canonical soundness against brute force") {
    // all sub-matchings of all full rank-2 matchings of size <= 3
    std::vector<OrderedMatching> subs;
    for (std::int64_t n = 1; n <= 3; ++n) {
        for (const auto& m : all_matchings(n, 2)) {
            std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
            // every nonempty subset of edges
            for (std::uint32_t s = 1; s < (1u << n); ++s) {
                std::vector<std::int64_t> chosen;
                for (std::int64_t i = 0; i < n; ++i)
                    if (s & (1u << i)) chosen.push_back(i);
                subs.push_back(m.induced(chosen));
            }
        }
    }
    int pairs = 0, isomorphic = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (std::size_t j = i; j < subs.size(); ++j) {
            const bool words_equal = canonical_form(subs[i]) == canonical_form(subs[j]);
            const bool brute = isomorphic_by_brute_force(subs[i], subs[j]);
            CHECK(words_equal == brute);
            ++pairs;
            isomorphic += brute;
        }
    }
    CHECK(pairs > 1000);
    CHECK(isomorphic > 0);
}

TEST_CASE("pattern_of is invariant under order-preserving relabeling") {
    SeededSource src(99, 0);
    for (int iter = 0; iter < 200; ++iter) {
        const int r = 2 + static_cast<int>(src.next_below(4));
        OrderedMatching m = random_matching(2, r, src);
        Pattern p = pattern_of(m, 0, 1);
        // strictly increasing relabeling: v -> 3v + iter
        std::vector<Vertex> e0, e1;
        for (Vertex v : m.edge(0)) e0.push_back(3 * v + iter);
        for (Vertex v : m.edge(1)) e1.push_back(3 * v + iter);
        CHECK(pattern_of(e0, e1) == p);
        // and it is listed by enumerate_patterns
        auto all = enumerate_patterns(r);
        CHECK(std::find(all.begin(), all.end(), p) != all.end());
    }
}

TEST_CASE("json exchange") {
    OrderedMatching m = parse_word("ABAB");
    std::string j = matching_to_json(m);
    CHECK(matching_from_json(j) == m);
    CHECK_THROWS_AS(matching_from_json("{\"edges\": []}"), ParseError);
    CHECK_THROWS_AS(matching_from_json("not json"), ParseError);
}

TEST_CASE("permutation parsing and standardization") {
    Permutation pi = parse_permutation("3 1 4 2");
    CHECK(pi.length() == 4);
    CHECK_THROWS_AS(parse_permutation("1 1"), ParseError);
    CHECK_THROWS_AS(parse_permutation("0 1"), ParseError);
    std::vector<std::int64_t> vals{10, 3, 7};
    CHECK(standardize(vals) == std::vector<std::int32_t>{3, 1, 2});
}
