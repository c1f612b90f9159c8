#pragma once

#include <cstdint>

namespace omt {

// Hard caps for the exact solvers. Exceeding a cap raises BudgetError;
// nothing silently degrades to an approximation.
struct Budget {
    std::int64_t twins_exact_max_n_rank2 = 18; // max_twins_exact, rank 2
    std::int64_t twins_exact_max_n = 12;       // max_twins_exact, rank >= 3
    std::int64_t tau_exact_max_len = 14;       // tau_exact
    std::int64_t clique_exact_max_edges = 200; // max_clique_exact
    std::int64_t enumeration_cap = 1'000'000;  // instances an extremal scan may touch

    std::int64_t twins_limit(int rank) const {
        return rank == 2 ? twins_exact_max_n_rank2 : twins_exact_max_n;
    }
};

} // namespace omt
