#include "omt/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "omt/clique.hpp"
#include "omt/generate.hpp"

namespace omt {

namespace {

// Enumerates k-subsets of 0..n-1 in lexicographic order.
template <typename F>
void for_each_subset(std::int64_t n, std::int64_t k, F&& f) {
    if (k > n || k < 0) return;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!f(idx)) return;
        std::int64_t i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
}

std::uint64_t subset_mask(const std::vector<std::int64_t>& idx) {
    std::uint64_t m = 0;
    for (std::int64_t i : idx) m |= std::uint64_t{1} << i;
    return m;
}

std::vector<std::int64_t> mask_to_indices(std::uint64_t mask) {
    std::vector<std::int64_t> out;
    for (int i = 0; i < 64; ++i)
        if (mask & (std::uint64_t{1} << i)) out.push_back(i);
    return out;
}

// Two disjoint same-class k-subsets of edges, if any; first hit in
// enumeration order, so the result is deterministic.
std::optional<std::pair<std::uint64_t, std::uint64_t>>
find_isomorphic_disjoint_pair(const OrderedMatching& m, std::int64_t k) {
    std::unordered_map<std::string, std::vector<std::uint64_t>> classes;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;
    for_each_subset(m.size(), k, [&](const std::vector<std::int64_t>& idx) {
        const std::uint64_t mask = subset_mask(idx);
        auto& bucket = classes[canonical_key(m, idx)];
        for (std::uint64_t other : bucket) {
            if ((other & mask) == 0) {
                hit = {other, mask};
                return false;
            }
        }
        bucket.push_back(mask);
        return true;
    });
    return hit;
}

} // namespace

bool has_twins_of_size(const OrderedMatching& m, std::int64_t k) {
    if (k <= 0) return true;
    if (2 * k > m.size()) return false;
    return find_isomorphic_disjoint_pair(m, k).has_value();
}

TwinsResult max_twins_exact(const OrderedMatching& m, const Budget& budget) {
    if (m.size() > budget.twins_limit(m.rank()))
        throw BudgetError("matching of size " + std::to_string(m.size()) +
                          " exceeds the exact twins budget");
    TwinsResult result;
    for (std::int64_t k = m.size() / 2; k >= 1; --k) {
        if (auto pair = find_isomorphic_disjoint_pair(m, k)) {
            result.size = k;
            result.cert = verify_twins(m, mask_to_indices(pair->first), mask_to_indices(pair->second));
            return result;
        }
    }
    return result; // size 0, empty certificate
}

std::int64_t max_tuplets_exact(const OrderedMatching& m, int t, const Budget& budget) {
    if (t < 2) throw std::invalid_argument("tuplet multiplicity must be at least 2");
    if (m.size() > budget.twins_limit(m.rank()))
        throw BudgetError("matching of size " + std::to_string(m.size()) +
                          " exceeds the exact tuplets budget");
    const std::int64_t n = m.size();
    for (std::int64_t k = n / t; k >= 1; --k) {
        std::unordered_map<std::string, std::vector<std::uint64_t>> classes;
        bool found = false;
        for_each_subset(n, k, [&](const std::vector<std::int64_t>& idx) {
            classes[canonical_key(m, idx)].push_back(subset_mask(idx));
            return true;
        });
        for (auto& [key, masks] : classes) {
            if (static_cast<int>(masks.size()) < t) continue;
            // backtracking search for t pairwise disjoint masks
            std::vector<std::size_t> chosen;
            auto dfs = [&](auto&& self, std::size_t start, std::uint64_t used) -> bool {
                if (static_cast<int>(chosen.size()) == t) return true;
                for (std::size_t i = start; i < masks.size(); ++i) {
                    if (masks.size() - i < static_cast<std::size_t>(t) - chosen.size()) return false;
                    if (masks[i] & used) continue;
                    chosen.push_back(i);
                    if (self(self, i + 1, used | masks[i])) return true;
                    chosen.pop_back();
                }
                return false;
            };
            if (dfs(dfs, 0, 0)) {
                found = true;
                break;
            }
        }
        if (found) return k;
    }
    return 0;
}

namespace {

BitGraph compatibility_graph(const OrderedMatching& m, const Pattern& p) {
    const int n = static_cast<int>(m.size());
    BitGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pattern_of(m, i, j) == p) g.add_edge(i, j);
    return g;
}

} // namespace

CliqueResult max_clique_exact(const OrderedMatching& m, const Pattern& p, const Budget& budget) {
    if (m.size() > budget.clique_exact_max_edges)
        throw BudgetError("matching of size " + std::to_string(m.size()) +
                          " exceeds the exact clique budget");
    if (p.rank() != m.rank()) throw std::invalid_argument("pattern rank differs from matching rank");
    CliqueResult result;
    if (m.size() == 0) return result;
    auto members = compatibility_graph(m, p).max_clique();
    if (members.empty()) members = {0}; // a single edge is a clique for every pattern
    result.size = static_cast<std::int64_t>(members.size());
    result.cert.pattern = p;
    result.cert.members.assign(members.begin(), members.end());
    return result;
}

CliqueResult max_clique_exact_all(const OrderedMatching& m, const Budget& budget) {
    CliqueResult best;
    for (const Pattern& p : enumerate_patterns(m.rank())) {
        CliqueResult r = max_clique_exact(m, p, budget);
        if (r.size > best.size) best = std::move(r);
    }
    return best;
}

namespace {

std::string subsequence_key(std::span<const std::int64_t> values, const std::vector<std::int64_t>& idx) {
    std::vector<std::int64_t> sub;
    sub.reserve(idx.size());
    for (std::int64_t i : idx) sub.push_back(values[static_cast<std::size_t>(i)]);
    auto ranks = standardize(sub);
    std::string key;
    key.reserve(ranks.size() * 2);
    for (std::int32_t r : ranks) {
        key.push_back(static_cast<char>(r & 0xff));
        key.push_back(static_cast<char>((r >> 8) & 0xff));
    }
    return key;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
find_twin_subsequences(std::span<const std::int64_t> values, std::int64_t k) {
    std::unordered_map<std::string, std::vector<std::uint64_t>> classes;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> hit;
    for_each_subset(static_cast<std::int64_t>(values.size()), k,
                    [&](const std::vector<std::int64_t>& idx) {
                        const std::uint64_t mask = subset_mask(idx);
                        auto& bucket = classes[subsequence_key(values, idx)];
                        for (std::uint64_t other : bucket) {
                            if ((other & mask) == 0) {
                                hit = {other, mask};
                                return false;
                            }
                        }
                        bucket.push_back(mask);
                        return true;
                    });
    return hit;
}

} // namespace

bool has_permutation_twins_of_size(std::span<const std::int64_t> values, std::int64_t k) {
    if (k <= 0) return true;
    if (2 * k > static_cast<std::int64_t>(values.size())) return false;
    return find_twin_subsequences(values, k).has_value();
}

PermutationTwins tau_exact(const Permutation& pi, const Budget& budget) {
    if (pi.length() > budget.tau_exact_max_len)
        throw BudgetError("permutation of length " + std::to_string(pi.length()) +
                          " exceeds the exact budget");
    PermutationTwins result;
    for (std::int64_t k = pi.length() / 2; k >= 1; --k) {
        if (auto pair = find_twin_subsequences(pi.values, k)) {
            result.size = k;
            result.left = mask_to_indices(pair->first);
            result.right = mask_to_indices(pair->second);
            return result;
        }
    }
    return result;
}

BigInt twin_pair_count(const OrderedMatching& m, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("twin size must be nonnegative");
    if (k == 0 || 2 * k > m.size()) return 0;
    std::unordered_map<std::string, std::vector<std::uint64_t>> classes;
    for_each_subset(m.size(), k, [&](const std::vector<std::int64_t>& idx) {
        classes[canonical_key(m, idx)].push_back(subset_mask(idx));
        return true;
    });
    BigInt total = 0;
    for (auto& [key, masks] : classes) {
        for (std::size_t i = 0; i < masks.size(); ++i)
            for (std::size_t j = i + 1; j < masks.size(); ++j)
                if ((masks[i] & masks[j]) == 0) ++total;
    }
    return total;
}

namespace {

ExtremalRecord scan_matchings(ExtremalQuantity q, int r, std::int64_t n, const Budget& budget) {
    ExtremalRecord rec{q, r, n, -1, ""};
    enumerate_matchings(n, r, [&](const OrderedMatching& m) {
        if (q == ExtremalQuantity::twins) {
            // skip instances that cannot improve the current minimum
            if (rec.value < 0 || !has_twins_of_size(m, rec.value)) {
                rec.value = max_twins_exact(m, budget).size;
                rec.witness_word = to_word(m);
            }
            return rec.value > 0;
        }
        if (m.size() > budget.clique_exact_max_edges)
            throw BudgetError("instance exceeds the exact clique budget");
        if (rec.value >= 0) {
            bool at_least = false;
            for (const Pattern& p : enumerate_patterns(r)) {
                auto clique = compatibility_graph(m, p).max_clique(static_cast<int>(rec.value));
                if (static_cast<std::int64_t>(clique.size()) >= rec.value) {
                    at_least = true;
                    break;
                }
            }
            if (at_least) return true;
        }
        rec.value = max_clique_exact_all(m, budget).size;
        rec.witness_word = to_word(m);
        return rec.value > 1; // a single edge is always a clique
    }, budget);
    return rec;
}

ExtremalRecord scan_permutations(std::int64_t n, const Budget& budget) {
    if (factorial(n) > budget.enumeration_cap)
        throw BudgetError("permutation scan of length " + std::to_string(n) +
                          " exceeds the configured cap");
    ExtremalRecord rec{ExtremalQuantity::tau, 0, n, -1, ""};
    std::vector<std::int64_t> vals(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = i + 1;
    auto word_of = [](const std::vector<std::int64_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s.push_back(' ');
            s += std::to_string(v[i]);
        }
        return s;
    };
    do {
        if (rec.value >= 0 && has_permutation_twins_of_size(vals, rec.value)) continue;
        rec.value = tau_exact(Permutation(vals), budget).size;
        rec.witness_word = word_of(vals);
        if (rec.value == 0) break;
    } while (std::next_permutation(vals.begin(), vals.end()));
    return rec;
}

} // namespace

ExtremalRecord extremal_scan(ExtremalQuantity q, int r, std::int64_t n, const Budget& budget) {
    if (n < 1) throw std::invalid_argument("scan size must be positive");
    if (q == ExtremalQuantity::tau) return scan_permutations(n, budget);
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    if (q == ExtremalQuantity::twins && n > budget.twins_limit(r))
        throw BudgetError("instances exceed the exact twins budget");
    return scan_matchings(q, r, n, budget);
}

} // namespace omt
