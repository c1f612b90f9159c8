#include "omt/counting.hpp"

#include <stdexcept>

namespace omt {

BigInt factorial(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("factorial of negative number");
    BigInt out = 1;
    for (std::int64_t i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        out *= (n - i);
        out /= (i + 1);
    }
    return out;
}

BigInt falling_factorial(std::int64_t n, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("negative length falling factorial");
    BigInt out = 1;
    for (std::int64_t i = 0; i < k; ++i) out *= (n - i);
    return out;
}

BigInt count_matchings(std::int64_t n, int r) {
    if (n < 0) throw std::invalid_argument("matching size must be nonnegative");
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    BigInt denom = factorial(n);
    const BigInt rfact = factorial(r);
    for (std::int64_t i = 0; i < n; ++i) denom *= rfact;
    return factorial(r * n) / denom;
}

BigRat expected_twin_count(std::int64_t n, int r, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("twin size must be nonnegative");
    if (n < 1) throw std::invalid_argument("matching size must be positive");
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    if (2 * k > n) return 0;
    BigInt num = falling_factorial(n, 2 * k);
    const BigInt rfact = factorial(r);
    for (std::int64_t i = 0; i < k; ++i) num *= rfact;
    BigInt den = 2 * factorial(k) * factorial(r * k);
    return BigRat(num, den);
}

BigRat expected_twin_count_multinomial(std::int64_t n, int r, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("twin size must be nonnegative");
    if (n < 1) throw std::invalid_argument("matching size must be positive");
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    if (2 * k > n) return 0;
    BigInt multinomial =
        factorial(r * n) / (factorial(r * k) * factorial(r * k) * factorial(r * n - 2 * r * k));
    BigInt num = multinomial * count_matchings(k, r) * count_matchings(n - 2 * k, r);
    BigInt den = 2 * count_matchings(n, r);
    return BigRat(num, den);
}

BigRat expected_pair_count(std::int64_t n, int r, std::int64_t a) {
    if (a < 1) throw std::invalid_argument("block size must be positive");
    if (n < 1) throw std::invalid_argument("matching size must be positive");
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    if ((r * n) % a != 0) throw std::invalid_argument("block size must divide the ground size");
    if (n < 2) return 0;
    const std::int64_t blocks = r * n / a;
    BigInt num = binomial(blocks, r);
    const BigInt per_block = binomial(a, 2);
    for (int i = 0; i < r; ++i) num *= per_block;
    num <<= (r - 1); // 2^(r-1) orderings of the two edges across blocks
    return BigRat(num * count_matchings(n - 2, r), count_matchings(n, r));
}

} // namespace omt
