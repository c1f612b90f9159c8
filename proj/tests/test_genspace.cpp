#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "omt/builder.hpp"
#include "omt/counting.hpp"
#include "omt/generate.hpp"
#include "omt/matching.hpp"
#include "omt/oracle.hpp"
#include "omt/rng.hpp"

using namespace omt;

TEST_CASE("count_matchings closed form") {
    CHECK(count_matchings(1, 2) == 1);
    CHECK(count_matchings(1, 5) == 1);
    CHECK(count_matchings(2, 3) == 10);
    CHECK(count_matchings(3, 2) == 15);
    CHECK(count_matchings(0, 4) == 1);
    CHECK_THROWS(count_matchings(-1, 2));
}

TEST_CASE("count_matchings satisfies the smallest-vertex recurrence") {
    for (int r = 2; r <= 5; ++r) {
        for (std::int64_t n = 1; n <= 20; ++n) {
            CHECK(count_matchings(n, r) ==
                  binomial(r * n - 1, r - 1) * count_matchings(n - 1, r));
        }
    }
}

TEST_CASE("enumerate_matchings small cases") {
    auto two_two = all_matchings(2, 2);
    REQUIRE(two_two.size() == 3);
    std::set<std::string> words;
    for (const auto& m : two_two) words.insert(to_word(m));
    CHECK(words == std::set<std::string>{"AABB", "ABAB", "ABBA"});

    auto one_three = all_matchings(1, 3);
    REQUIRE(one_three.size() == 1);
    CHECK(to_word(one_three[0]) == "AAA");

    auto three_two = all_matchings(3, 2);
    CHECK(BigInt(three_two.size()) == count_matchings(3, 2));
    std::set<std::string> distinct;
    for (const auto& m : three_two) {
        CHECK(m.rank() == 2);
        CHECK(m.size() == 3);
        CHECK(m.is_full());
        distinct.insert(to_word(m));
    }
    CHECK(distinct.size() == three_two.size());
}

TEST_CASE("enumeration respects the budget") {
    Budget tiny;
    tiny.enumeration_cap = 10;
    CHECK_THROWS_AS(all_matchings(3, 2, tiny), BudgetError); // 15 > 10
    CHECK(all_matchings(2, 2, tiny).size() == 3);
}

TEST_CASE("enumeration is lexicographic in the edge lists") {
    auto ms = all_matchings(3, 2);
    for (std::size_t i = 1; i < ms.size(); ++i) {
        CHECK(ms[i - 1].flat() < ms[i].flat());
    }
}

TEST_CASE("random_matching basics") {
    SeededSource a(7, 0), c(7, 1);
    OrderedMatching m1 = random_matching(1, 4, a);
    CHECK(to_word(m1) == "AAAA"); // the unique matching of size 1

    OrderedMatching x = random_matching(50, 3, a);
    SeededSource a2(7, 0);
    random_matching(1, 4, a2);
    OrderedMatching y = random_matching(50, 3, a2);
    CHECK(x == y); // same seed, same stream position

    OrderedMatching z = random_matching(50, 3, c);
    CHECK(x != z); // distinct streams diverge

    CHECK_THROWS(random_matching(0, 2, a));
    CHECK_THROWS(random_matching(3, 1, a));
    for (std::int64_t i = 0; i < x.size(); ++i) CHECK(x.edge(i).size() == 3);
    CHECK(x.is_full());
}

namespace {

double uniformity_chi_square(std::int64_t n, int r, int samples, std::uint64_t seed) {
    auto all = all_matchings(n, r);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[to_word(all[i])] = static_cast<int>(i);
    std::vector<int> counts(all.size(), 0);
    SeededSource src(seed, 0);
    for (int s = 0; s < samples; ++s) {
        OrderedMatching m = random_matching(n, r, src);
        ++counts[static_cast<std::size_t>(index.at(to_word(m)))];
    }
    const double expected = static_cast<double>(samples) / static_cast<double>(all.size());
    double stat = 0;
    for (int c : counts) {
        const double d = c - expected;
        stat += d * d / expected;
    }
    return stat;
}

} // namespace

TEST_CASE("generator uniformity by chi-square") {
    // 99.9% quantiles: 13.816 at 2 degrees of freedom, 27.877 at 9
    CHECK(uniformity_chi_square(2, 2, 100000, 11) < 13.816);
    CHECK(uniformity_chi_square(2, 3, 100000, 11) < 27.877);
}

TEST_CASE("expected_twin_count examples") {
    CHECK(expected_twin_count(2, 2, 1) == BigRat(1));
    CHECK(expected_twin_count(2, 2, 2) == BigRat(0));
    CHECK(expected_twin_count(6, 2, 2) == BigRat(15));
    CHECK_THROWS(expected_twin_count(6, 2, -1));
}

TEST_CASE("both expectation routes agree exactly") {
    for (int r = 2; r <= 4; ++r)
        for (std::int64_t n = 1; n <= 12; ++n)
            for (std::int64_t k = 0; k <= n / 2 + 1; ++k)
                CHECK(expected_twin_count(n, r, k) == expected_twin_count_multinomial(n, r, k));
}

TEST_CASE("expected_pair_count examples") {
    CHECK(expected_pair_count(2, 2, 4) == BigRat(0));  // a = rn: one block, C(1,2) = 0
    CHECK(expected_pair_count(2, 2, 2) == BigRat(2, 3));
    CHECK_THROWS(expected_pair_count(5, 2, 3)); // 3 does not divide 10

    // direct check over the three matchings of size two: ABAB and ABBA have
    // both edges meeting blocks {1,2} and {3,4}, AABB has none
    std::int64_t total = 0;
    for (const auto& m : all_matchings(2, 2)) total += build_block_hypergraph(m, 2).pair_count;
    CHECK(BigRat(total, 3) == expected_pair_count(2, 2, 2));
}

TEST_CASE("pair count sampling tracks the exact expectation") {
    const std::int64_t n = 6;
    const int r = 2;
    const std::int64_t a = 3;
    const double expected = expected_pair_count(n, r, a).convert_to<double>();
    const int samples = 20000;
    double sum = 0, sumsq = 0;
    SeededSource src(5150, 0);
    for (int s = 0; s < samples; ++s) {
        const double y =
            static_cast<double>(build_block_hypergraph(random_matching(n, r, src), a).pair_count);
        sum += y;
        sumsq += y * y;
    }
    const double mean = sum / samples;
    const double var = (sumsq - samples * mean * mean) / (samples - 1);
    const double se = std::sqrt(var / samples);
    CHECK(std::abs(mean - expected) < 4 * se + 1e-12);
}

TEST_CASE("sampled twin-pair counts track the first-moment formula") {
    // mean of the exact pair count over sampled instances vs the formula
    const std::int64_t n = 5;
    const int r = 2;
    const std::int64_t k = 2;
    const double expected = expected_twin_count(n, r, k).convert_to<double>();
    const int samples = 20000;
    double sum = 0, sumsq = 0;
    SeededSource src(41, 0);
    for (int s = 0; s < samples; ++s) {
        const double x =
            twin_pair_count(random_matching(n, r, src), k).convert_to<double>();
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / samples;
    const double var = (sumsq - samples * mean * mean) / (samples - 1);
    const double se = std::sqrt(var / samples);
    CHECK(std::abs(mean - expected) < 4 * se + 1e-12);
}
