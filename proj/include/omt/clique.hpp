#pragma once

#include <cstdint>
#include <vector>

namespace omt {

// Undirected graph on 0..n-1 with bitset adjacency rows.
class BitGraph {
public:
    explicit BitGraph(int n);

    int order() const { return n_; }
    void add_edge(int i, int j);
    bool adjacent(int i, int j) const;

    // Exact maximum clique (branch and bound with greedy coloring bounds).
    // Stops early once a clique of size >= stop_at is found, returning it.
    std::vector<int> max_clique(int stop_at = -1) const;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> rows_;
};

} // namespace omt
