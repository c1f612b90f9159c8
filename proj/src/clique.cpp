#include "omt/clique.hpp"

#include <algorithm>
#include <bit>

namespace omt {

namespace {

struct BitSetOps {
    int words;

    void clear(std::uint64_t* s) const { std::fill(s, s + words, 0); }
    void copy(std::uint64_t* dst, const std::uint64_t* src) const { std::copy(src, src + words, dst); }
    void set(std::uint64_t* s, int i) const { s[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::uint64_t* s, int i) const { s[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(const std::uint64_t* s, int i) const { return (s[i >> 6] >> (i & 63)) & 1; }
    bool empty(const std::uint64_t* s) const {
        for (int w = 0; w < words; ++w)
            if (s[w]) return false;
        return true;
    }
    int count(const std::uint64_t* s) const {
        int c = 0;
        for (int w = 0; w < words; ++w) c += std::popcount(s[w]);
        return c;
    }
    void intersect(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b) const {
        for (int w = 0; w < words; ++w) dst[w] = a[w] & b[w];
    }
    int first(const std::uint64_t* s) const {
        for (int w = 0; w < words; ++w)
            if (s[w]) return w * 64 + std::countr_zero(s[w]);
        return -1;
    }
};

struct CliqueSearch {
    const int n;
    const int words;
    const std::vector<std::uint64_t>& rows;
    BitSetOps ops;
    std::vector<int> best;
    std::vector<int> current;
    int stop_at;
    bool done = false;

    const std::uint64_t* row(int v) const { return rows.data() + static_cast<std::size_t>(v) * words; }

    // Greedy coloring of `cand`; vertices come back ordered by color so the
    // branch bound |current| + color(v) prunes tight.
    void expand(std::uint64_t* cand, std::vector<std::uint64_t>& scratch) {
        if (done) return;
        const int cand_count = ops.count(cand);
        if (cand_count == 0) {
            if (current.size() > best.size()) {
                best = current;
                if (stop_at >= 0 && static_cast<int>(best.size()) >= stop_at) done = true;
            }
            return;
        }
        if (static_cast<int>(current.size()) + cand_count <= static_cast<int>(best.size())) return;

        std::vector<int> order;
        std::vector<int> color;
        order.reserve(static_cast<std::size_t>(cand_count));
        color.reserve(static_cast<std::size_t>(cand_count));
        std::uint64_t* uncolored = scratch.data();
        std::uint64_t* colorable = scratch.data() + words;
        ops.copy(uncolored, cand);
        int c = 0;
        while (!ops.empty(uncolored)) {
            ++c;
            ops.copy(colorable, uncolored);
            while (true) {
                const int v = ops.first(colorable);
                if (v < 0) break;
                ops.reset(colorable, v);
                ops.reset(uncolored, v);
                order.push_back(v);
                color.push_back(c);
                for (int w = 0; w < words; ++w) colorable[w] &= ~row(v)[w];
            }
        }

        std::vector<std::uint64_t> child(static_cast<std::size_t>(words));
        for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
            if (done) return;
            if (static_cast<int>(current.size()) + color[static_cast<std::size_t>(idx)] <=
                static_cast<int>(best.size()))
                return;
            const int v = order[static_cast<std::size_t>(idx)];
            current.push_back(v);
            ops.intersect(child.data(), cand, row(v));
            std::vector<std::uint64_t> child_scratch(static_cast<std::size_t>(2 * words));
            expand(child.data(), child_scratch);
            current.pop_back();
            ops.reset(cand, v);
        }
    }
};

} // namespace

BitGraph::BitGraph(int n) : n_(n), words_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * words_, 0) {}

void BitGraph::add_edge(int i, int j) {
    rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    rows_[static_cast<std::size_t>(j) * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
}

bool BitGraph::adjacent(int i, int j) const {
    return (rows_[static_cast<std::size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1;
}

std::vector<int> BitGraph::max_clique(int stop_at) const {
    if (n_ == 0) return {};
    CliqueSearch search{n_, words_, rows_, BitSetOps{words_}, {}, {}, stop_at};
    std::vector<std::uint64_t> cand(static_cast<std::size_t>(words_), 0);
    for (int v = 0; v < n_; ++v) search.ops.set(cand.data(), v);
    std::vector<std::uint64_t> scratch(static_cast<std::size_t>(2 * words_));
    search.expand(cand.data(), scratch);
    std::sort(search.best.begin(), search.best.end());
    return search.best;
}

} // namespace omt
