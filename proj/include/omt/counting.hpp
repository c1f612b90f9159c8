#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace omt {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt factorial(std::int64_t n);
BigInt binomial(std::int64_t n, std::int64_t k);
BigInt falling_factorial(std::int64_t n, std::int64_t k); // n (n-1) ... (n-k+1)

// Number of ordered r-matchings of size n on {1..rn}: (rn)! / ((r!)^n n!).
// n = 0 gives 1 by convention.
BigInt count_matchings(std::int64_t n, int r);

// Exact expected number of unordered twin pairs of size k in a uniform random
// r-matching of size n:  (1/2) n!/(n-2k)! (1/k!) (r!)^k / (rk)!  for 2k <= n,
// zero when k twins cannot fit.
BigRat expected_twin_count(std::int64_t n, int r, std::int64_t k);

// The same expectation in its unsimplified multinomial form
//   (1/2) C(rn; rk, rk, rn-2rk) a_k a_{n-2k} / a_n.
// The two routes must agree exactly; kept separate as a cross-check.
BigRat expected_twin_count_multinomial(std::int64_t n, int r, std::int64_t k);

// Exact expected number of unordered edge pairs sharing a block signature
// when {1..rn} is split into N = rn/a blocks of a consecutive integers:
//   C(N,r) C(a,2)^r 2^(r-1) a_{n-2} / a_n.
// Requires a | rn.
BigRat expected_pair_count(std::int64_t n, int r, std::int64_t a);

} // namespace omt
