#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omt/budget.hpp"
#include "omt/builder.hpp"

namespace omt {

enum class Method { block, recursive, clique, oracle };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct ExperimentPlan {
    Method method = Method::block;
    int rank = 2;
    std::vector<std::int64_t> grid; // strictly increasing n values
    int trials = 1;
    std::uint64_t master_seed = 0;
};

struct ResultRow {
    int rank = 0;
    std::int64_t n = 0;
    int trial = 0;
    std::uint64_t seed = 0; // derived cell seed; rerunning the cell alone reproduces `size`
    std::string method;
    std::int64_t size = 0;
    std::int64_t elapsed_ms = 0;

    bool operator==(const ResultRow&) const = default;
};

// One certificate size for a single (method, rank, n, seed) cell.
std::int64_t run_single(Method method, int rank, std::int64_t n, std::uint64_t seed,
                        const Budget& budget = {}, const BuilderParams& params = {});

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t n_index, int trial);

// Runs every (n, trial) cell of the plan. Rows are deterministic for a given
// master seed no matter how many workers execute them; elapsed_ms is wall
// time unless wall_timing is off (then 0, making whole tables byte-stable).
std::vector<ResultRow> run_experiment(const ExperimentPlan& plan, int workers = 1,
                                      bool wall_timing = true, const Budget& budget = {},
                                      const BuilderParams& params = {});

struct ScalingFit {
    double slope = 0;
    double intercept = 0; // in log space
    double residual = 0;  // RMS residual of log(statistic)
    int points_used = 0;
    int excluded = 0; // points dropped because the statistic was not positive
};

// Least-squares slope of log(statistic) against log(n). Points with a
// nonpositive statistic are excluded; fewer than 3 usable points is an error.
ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points);

// Per-n aggregation of a result table into (n, statistic) points.
std::vector<std::pair<double, double>> aggregate_by_n(const std::vector<ResultRow>& rows,
                                                      bool use_median);

// Linear-interpolation quantile (the common "type 7" rule).
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

// CSV columns: r,n,trial,seed,method,size,elapsed_ms (header included).
std::string table_to_csv(const std::vector<ResultRow>& rows);
std::string table_to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> table_from_csv(const std::string& text);
std::vector<ResultRow> table_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace omt
