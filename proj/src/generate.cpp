#include "omt/generate.hpp"

#include <algorithm>
#include <stdexcept>

#include "omt/counting.hpp"

namespace omt {

std::vector<Vertex> random_permutation(std::int64_t m, SeededSource& src) {
    std::vector<Vertex> vals(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) vals[static_cast<std::size_t>(i)] = i + 1;
    for (std::int64_t i = m - 1; i > 0; --i) {
        const std::uint64_t j = src.next_below(static_cast<std::uint64_t>(i) + 1);
        std::swap(vals[static_cast<std::size_t>(i)], vals[j]);
    }
    return vals;
}

OrderedMatching random_matching(std::int64_t n, int r, SeededSource& src) {
    if (n < 1) throw std::invalid_argument("matching size must be positive");
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    std::vector<Vertex> flat = random_permutation(n * r, src);
    return OrderedMatching(r, std::move(flat));
}

namespace {

struct Enumerator {
    int rank;
    std::int64_t total_vertices;
    const std::function<bool(const OrderedMatching&)>* visit;
    std::vector<bool> used;
    std::vector<Vertex> stack; // edges built so far, flat
    bool stopped = false;

    void run() {
        if (stopped) return;
        Vertex first = 0;
        for (Vertex v = 1; v <= total_vertices; ++v) {
            if (!used[static_cast<std::size_t>(v - 1)]) {
                first = v;
                break;
            }
        }
        if (first == 0) {
            OrderedMatching m(rank, stack);
            if (!(*visit)(m)) stopped = true;
            return;
        }
        used[static_cast<std::size_t>(first - 1)] = true;
        stack.push_back(first);
        choose_partners(first, rank - 1);
        stack.pop_back();
        used[static_cast<std::size_t>(first - 1)] = false;
    }

    void choose_partners(Vertex from, int remaining) {
        if (stopped) return;
        if (remaining == 0) {
            run();
            return;
        }
        for (Vertex v = from + 1; v <= total_vertices; ++v) {
            if (used[static_cast<std::size_t>(v - 1)]) continue;
            used[static_cast<std::size_t>(v - 1)] = true;
            stack.push_back(v);
            choose_partners(v, remaining - 1);
            stack.pop_back();
            used[static_cast<std::size_t>(v - 1)] = false;
            if (stopped) return;
        }
    }
};

} // namespace

void enumerate_matchings(std::int64_t n, int r,
                         const std::function<bool(const OrderedMatching&)>& visit,
                         const Budget& budget) {
    if (n < 0) throw std::invalid_argument("matching size must be nonnegative");
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    if (count_matchings(n, r) > budget.enumeration_cap)
        throw BudgetError("enumeration of " + std::to_string(n) + " edges at rank " +
                          std::to_string(r) + " exceeds the configured cap");
    if (n == 0) return;
    Enumerator e{r, n * r, &visit, std::vector<bool>(static_cast<std::size_t>(n * r), false), {}, false};
    e.stack.reserve(static_cast<std::size_t>(n * r));
    e.run();
}

std::vector<OrderedMatching> all_matchings(std::int64_t n, int r, const Budget& budget) {
    std::vector<OrderedMatching> out;
    enumerate_matchings(n, r, [&](const OrderedMatching& m) {
        out.push_back(m);
        return true;
    }, budget);
    return out;
}

} // namespace omt
