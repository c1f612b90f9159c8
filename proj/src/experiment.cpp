#include "omt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "omt/generate.hpp"
#include "omt/oracle.hpp"
#include "omt/rng.hpp"

namespace omt {

std::string method_name(Method m) {
    switch (m) {
        case Method::block: return "block";
        case Method::recursive: return "recursive";
        case Method::clique: return "clique";
        case Method::oracle: return "oracle";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "block") return Method::block;
    if (name == "recursive") return Method::recursive;
    if (name == "clique") return Method::clique;
    if (name == "oracle") return Method::oracle;
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t n_index, int trial) {
    return mix_seed(mix_seed(master_seed, static_cast<std::uint64_t>(n_index)),
                    static_cast<std::uint64_t>(trial));
}

std::int64_t run_single(Method method, int rank, std::int64_t n, std::uint64_t seed,
                        const Budget& budget, const BuilderParams& params) {
    SeededSource src(seed, 0);
    OrderedMatching m = random_matching(n, rank, src);
    switch (method) {
        case Method::block: return block_twin_finder(m, kAutoBlockSize, params).size;
        case Method::recursive: return find_twins_recursive(m, params).size;
        case Method::clique: return static_cast<std::int64_t>(clique_find(m, params).members.size());
        case Method::oracle: return max_twins_exact(m, budget).size;
    }
    return 0;
}

std::vector<ResultRow> run_experiment(const ExperimentPlan& plan, int workers, bool wall_timing,
                                      const Budget& budget, const BuilderParams& params) {
    if (plan.trials < 1) throw std::invalid_argument("trials must be at least 1");
    for (std::size_t i = 1; i < plan.grid.size(); ++i)
        if (plan.grid[i] <= plan.grid[i - 1])
            throw std::invalid_argument("grid must be strictly increasing");
    if (plan.grid.empty()) throw std::invalid_argument("grid must not be empty");
    if (plan.method == Method::oracle) {
        for (std::int64_t n : plan.grid)
            if (n > budget.twins_limit(plan.rank))
                throw BudgetError("oracle method exceeds the exact twins budget at n = " +
                                  std::to_string(n));
    }

    const std::size_t cells = plan.grid.size() * static_cast<std::size_t>(plan.trials);
    std::vector<ResultRow> rows(cells);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto work = [&]() {
        while (!failed.load()) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= cells) return;
            const std::size_t n_index = cell / static_cast<std::size_t>(plan.trials);
            const int trial = static_cast<int>(cell % static_cast<std::size_t>(plan.trials));
            const std::int64_t n = plan.grid[n_index];
            const std::uint64_t seed = cell_seed(plan.master_seed, n_index, trial);
            ResultRow row;
            row.rank = plan.rank;
            row.n = n;
            row.trial = trial;
            row.seed = seed;
            row.method = method_name(plan.method);
            try {
                const auto start = std::chrono::steady_clock::now();
                row.size = run_single(plan.method, plan.rank, n, seed, budget, params);
                const auto stop = std::chrono::steady_clock::now();
                row.elapsed_ms = wall_timing
                    ? std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()
                    : 0;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error_message = e.what();
                failed.store(true);
                return;
            }
            rows[cell] = std::move(row);
        }
    };

    const int thread_count = std::max(1, workers);
    if (thread_count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw Error("experiment failed: " + error_message);
    return rows; // cell order is already (n, trial)
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

std::vector<std::pair<double, double>> aggregate_by_n(const std::vector<ResultRow>& rows,
                                                      bool use_median) {
    std::vector<std::int64_t> ns;
    for (const auto& row : rows)
        if (std::find(ns.begin(), ns.end(), row.n) == ns.end()) ns.push_back(row.n);
    std::sort(ns.begin(), ns.end());
    std::vector<std::pair<double, double>> points;
    for (std::int64_t n : ns) {
        std::vector<double> sizes;
        for (const auto& row : rows)
            if (row.n == n) sizes.push_back(static_cast<double>(row.size));
        double stat;
        if (use_median) {
            stat = median(std::move(sizes));
        } else {
            stat = 0;
            for (double s : sizes) stat += s;
            stat /= static_cast<double>(sizes.size());
        }
        points.emplace_back(static_cast<double>(n), stat);
    }
    return points;
}

ScalingFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> usable;
    int excluded = 0;
    for (const auto& [n, stat] : points) {
        if (stat > 0)
            usable.emplace_back(std::log(n), std::log(stat));
        else
            ++excluded;
    }
    if (usable.size() < 3)
        throw Error("fit needs at least 3 points with a positive statistic (have " +
                    std::to_string(usable.size()) + ")");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : usable) {
        sx += x;
        sy += y;
    }
    const double mx = sx / static_cast<double>(usable.size());
    const double my = sy / static_cast<double>(usable.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : usable) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) throw Error("fit needs at least two distinct n values");
    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (const auto& [x, y] : usable) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(usable.size()));
    fit.points_used = static_cast<int>(usable.size());
    fit.excluded = excluded;
    return fit;
}

// --- table serialization --------------------------------------------------------

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

std::string table_to_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << "r,n,trial,seed,method,size,elapsed_ms\n";
    for (const auto& row : rows) {
        out << row.rank << ',' << row.n << ',' << row.trial << ',' << row.seed << ','
            << csv_quote(row.method) << ',' << row.size << ',' << row.elapsed_ms << '\n';
    }
    return out.str();
}

std::string table_to_json(const std::vector<ResultRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["r"] = row.rank;
        j["n"] = row.n;
        j["trial"] = row.trial;
        j["seed"] = row.seed;
        j["method"] = row.method;
        j["size"] = row.size;
        j["elapsed_ms"] = row.elapsed_ms;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

std::vector<ResultRow> table_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV table");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != 7) throw ParseError("CSV row needs 7 fields");
        ResultRow row;
        row.rank = std::stoi(fields[0]);
        row.n = std::stoll(fields[1]);
        row.trial = std::stoi(fields[2]);
        row.seed = std::stoull(fields[3]);
        row.method = fields[4];
        row.size = std::stoll(fields[5]);
        row.elapsed_ms = std::stoll(fields[6]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> table_from_json(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON table: ") + e.what());
    }
    if (!arr.is_array()) throw ParseError("JSON table must be an array");
    std::vector<ResultRow> rows;
    for (const auto& j : arr) {
        ResultRow row;
        row.rank = j.at("r").get<int>();
        row.n = j.at("n").get<std::int64_t>();
        row.trial = j.at("trial").get<int>();
        row.seed = j.at("seed").get<std::uint64_t>();
        row.method = j.at("method").get<std::string>();
        row.size = j.at("size").get<std::int64_t>();
        row.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace omt
