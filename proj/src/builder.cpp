#include "omt/builder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace omt {

HalfSplit split_counts(const OrderedMatching& m) {
    if (!m.is_full()) throw std::invalid_argument("split counts need a full matching");
    HalfSplit hs;
    hs.half_size = m.vertex_count() / 2;
    hs.counts.assign(static_cast<std::size_t>(m.rank()) + 1, 0);
    for (std::int64_t i = 0; i < m.size(); ++i) {
        std::int64_t inside = 0;
        for (Vertex v : m.edge(i))
            if (v <= hs.half_size) ++inside;
        ++hs.counts[static_cast<std::size_t>(inside)];
    }
    return hs;
}

// --- block hypergraph ---------------------------------------------------------

BlockHypergraph build_block_hypergraph(const OrderedMatching& m, std::int64_t a) {
    if (a < 2) throw std::invalid_argument("block size must be at least 2");
    if (!m.is_full()) throw std::invalid_argument("block construction needs a full matching");
    BlockHypergraph h;
    h.block_size = a;
    h.block_count = (m.vertex_count() + a - 1) / a;

    std::map<std::vector<std::int32_t>, std::vector<std::int64_t>> groups;
    std::vector<std::int32_t> sig(static_cast<std::size_t>(m.rank()));
    for (std::int64_t i = 0; i < m.size(); ++i) {
        auto e = m.edge(i);
        bool transversal = true;
        for (int k = 0; k < m.rank(); ++k) {
            sig[static_cast<std::size_t>(k)] = static_cast<std::int32_t>((e[static_cast<std::size_t>(k)] - 1) / a);
            if (k > 0 && sig[static_cast<std::size_t>(k)] == sig[static_cast<std::size_t>(k - 1)]) {
                transversal = false; // edge hits a block twice
                break;
            }
        }
        if (transversal) groups[sig].push_back(i);
    }

    std::map<std::int32_t, std::int64_t> degree;
    for (auto& [signature, witnesses] : groups) {
        const std::int64_t x = static_cast<std::int64_t>(witnesses.size());
        h.pair_count += x * (x - 1) / 2;
        if (x >= 2) {
            ++h.edge_count;
            for (std::int32_t b : signature) ++degree[b];
            h.hyperedges.emplace_back(signature, witnesses);
        }
    }
    for (auto& [block, d] : degree) ++h.degree_histogram[d];
    return h;
}

std::int64_t auto_block_size(std::int64_t n, int r) {
    if (n < 1 || r < 2) throw std::invalid_argument("bad parameters for block size");
    double rfact = 1.0;
    for (int i = 2; i <= r; ++i) rfact *= i;
    const double beta = std::pow(20.0 * std::exp(1.0) * rfact, -1.0 / (r + 1));
    const double raw = beta * std::pow(static_cast<double>(n), (r - 1.0) / (r + 1.0));
    const std::int64_t rounded = std::llround(raw);
    return std::clamp<std::int64_t>(rounded, 2, n * r);
}

namespace {

// Exact maximum set packing over few hyperedges (block-disjoint selection).
std::vector<std::size_t> exact_block_matching(const BlockHypergraph& h) {
    std::vector<std::size_t> best, current;
    std::vector<bool> used(static_cast<std::size_t>(h.block_count), false);
    auto dfs = [&](auto&& self, std::size_t from) -> void {
        if (current.size() > best.size()) best = current;
        if (current.size() + (h.hyperedges.size() - from) <= best.size()) return;
        for (std::size_t i = from; i < h.hyperedges.size(); ++i) {
            const auto& sig = h.hyperedges[i].first;
            bool free = true;
            for (std::int32_t b : sig)
                if (used[static_cast<std::size_t>(b)]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (std::int32_t b : sig) used[static_cast<std::size_t>(b)] = true;
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
            for (std::int32_t b : sig) used[static_cast<std::size_t>(b)] = false;
        }
    };
    dfs(dfs, 0);
    std::sort(best.begin(), best.end());
    return best;
}

} // namespace

TwinsCertificate block_twin_finder(const OrderedMatching& m, std::int64_t a,
                                   const BuilderParams& params) {
    if (a == kAutoBlockSize) a = auto_block_size(m.size(), m.rank());
    BlockHypergraph h = build_block_hypergraph(m, a);

    std::vector<std::size_t> selected;
    if (params.exact_block_matching &&
        static_cast<std::int64_t>(h.hyperedges.size()) <= params.exact_block_matching_max) {
        selected = exact_block_matching(h);
    } else {
        std::vector<bool> used(static_cast<std::size_t>(h.block_count), false);
        for (std::size_t i = 0; i < h.hyperedges.size(); ++i) {
            const auto& sig = h.hyperedges[i].first;
            bool free = true;
            for (std::int32_t b : sig)
                if (used[static_cast<std::size_t>(b)]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (std::int32_t b : sig) used[static_cast<std::size_t>(b)] = true;
            selected.push_back(i);
        }
    }

    std::vector<std::int64_t> left, right;
    for (std::size_t i : selected) {
        const auto& witnesses = h.hyperedges[i].second;
        left.push_back(witnesses[0]);
        right.push_back(witnesses[1]);
    }
    return verify_twins(m, std::move(left), std::move(right));
}

// --- clique find -----------------------------------------------------------------

CliqueCertificate clique_find(const OrderedMatching& m, const BuilderParams& params) {
    if (m.size() < 1) throw std::invalid_argument("clique search needs a nonempty matching");
    if (m.rank() == 1) {
        // singletons pairwise realize the unique rank-1 pattern AB
        CliqueCertificate cert;
        cert.pattern = Pattern(1, 0b10);
        cert.members.resize(static_cast<std::size_t>(m.size()));
        std::iota(cert.members.begin(), cert.members.end(), 0);
        return cert;
    }
    if (m.size() <= params.clique_exact_max) {
        Budget b;
        b.clique_exact_max_edges = std::max(b.clique_exact_max_edges, m.size());
        return max_clique_exact_all(m, b).cert;
    }
    CliqueCertificate best;
    for (const Pattern& p : enumerate_patterns(m.rank())) {
        std::vector<std::int64_t> members;
        for (std::int64_t i = 0; i < m.size(); ++i) {
            bool compatible = true;
            for (std::int64_t j : members) {
                if (pattern_of(m, j, i) != p) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) members.push_back(i);
        }
        if (members.size() > best.members.size()) {
            best.pattern = p;
            best.members = std::move(members);
        }
    }
    return best;
}

// --- permutation twins -------------------------------------------------------------

namespace {

// Longest strictly increasing subsequence under `less`, as positions.
std::vector<std::int64_t> longest_monotone(std::span<const std::int64_t> values, bool increasing) {
    const std::int64_t n = static_cast<std::int64_t>(values.size());
    std::vector<std::int64_t> tails;   // positions of minimal tail per length
    std::vector<std::int64_t> parent(static_cast<std::size_t>(n), -1);
    auto key = [&](std::int64_t pos) {
        return increasing ? values[static_cast<std::size_t>(pos)] : -values[static_cast<std::size_t>(pos)];
    };
    for (std::int64_t i = 0; i < n; ++i) {
        auto it = std::lower_bound(tails.begin(), tails.end(), key(i),
                                   [&](std::int64_t pos, std::int64_t k) { return key(pos) < k; });
        if (it != tails.begin()) parent[static_cast<std::size_t>(i)] = *(it - 1);
        if (it == tails.end())
            tails.push_back(i);
        else
            *it = i;
    }
    std::vector<std::int64_t> out;
    if (tails.empty()) return out;
    for (std::int64_t pos = tails.back(); pos >= 0; pos = parent[static_cast<std::size_t>(pos)])
        out.push_back(pos);
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

PermutationTwins permutation_twins(std::span<const std::int64_t> values, const BuilderParams& params) {
    PermutationTwins out;
    const std::int64_t m = static_cast<std::int64_t>(values.size());
    if (m <= 1) return out;
    if (m <= params.perm_exact_max) {
        auto ranks = standardize(values);
        std::vector<std::int64_t> vals(ranks.begin(), ranks.end());
        return tau_exact(Permutation(std::move(vals)));
    }
    auto inc = longest_monotone(values, true);
    auto dec = longest_monotone(values, false);
    const auto& mono = inc.size() >= dec.size() ? inc : dec;
    const std::int64_t k = static_cast<std::int64_t>(mono.size()) / 2;
    out.size = k;
    out.left.assign(mono.begin(), mono.begin() + k);
    out.right.assign(mono.end() - k, mono.end());
    return out;
}

// --- recursive twin finder ------------------------------------------------------------

namespace {

TwinsCertificate verified_or_empty(const OrderedMatching& m, std::vector<std::int64_t> left,
                                   std::vector<std::int64_t> right) {
    try {
        return verify_twins(m, std::move(left), std::move(right));
    } catch (const VerifyError&) {
        return {};
    }
}

void consider(TwinsCertificate& best, TwinsCertificate cand) {
    if (cand.size > best.size) best = std::move(cand);
}

TwinsCertificate recurse(const OrderedMatching& m, const BuilderParams& params);

// Lifts a certificate over induced(idx) back to host indices.
TwinsCertificate lift(const TwinsCertificate& cert, const std::vector<std::int64_t>& idx) {
    TwinsCertificate out;
    out.size = cert.size;
    for (std::int64_t i : cert.left) out.left.push_back(idx[static_cast<std::size_t>(i)]);
    for (std::int64_t i : cert.right) out.right.push_back(idx[static_cast<std::size_t>(i)]);
    return out;
}

TwinsCertificate recurse_induced(const OrderedMatching& m, const std::vector<std::int64_t>& idx,
                                 const BuilderParams& params) {
    if (idx.size() < 2) return {};
    OrderedMatching sub = m.induced(idx).canonicalized();
    return lift(recurse(sub, params), idx);
}

// Clique on the p-vertex or (r-p)-vertex sides of the edges straddling the
// half split, then twins among the remainders, composed into full twins.
TwinsCertificate cross_case(const OrderedMatching& m, const std::vector<std::int64_t>& idx,
                            int p, bool clique_on_prefix, const BuilderParams& params) {
    const int r = m.rank();
    const int q = clique_on_prefix ? p : r - p;
    const int rem = r - q;
    // A rank-1 "clique" keeps the whole sub-matching, so pairing it with a
    // higher-rank remainder would just restate the original problem.
    if (q == 1 && rem >= 2) return {};

    // side parts, sorted by their leftmost vertex, remembering host edges
    std::vector<std::pair<std::vector<Vertex>, std::int64_t>> parts;
    parts.reserve(idx.size());
    for (std::int64_t i : idx) {
        auto e = m.edge(i);
        std::vector<Vertex> part;
        if (clique_on_prefix)
            part.assign(e.begin(), e.begin() + p);
        else
            part.assign(e.begin() + p, e.end());
        parts.emplace_back(std::move(part), i);
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
    std::vector<std::vector<Vertex>> side_edges;
    side_edges.reserve(parts.size());
    for (auto& [part, host] : parts) side_edges.push_back(part);
    OrderedMatching side = OrderedMatching::from_edges(q, side_edges);

    CliqueCertificate clique = clique_find(side, params);
    const std::int64_t k = static_cast<std::int64_t>(clique.members.size());
    if (k < 2) return {};
    std::vector<std::int64_t> host; // host edge per clique rank
    host.reserve(static_cast<std::size_t>(k));
    for (std::int64_t c : clique.members) host.push_back(parts[static_cast<std::size_t>(c)].second);

    std::vector<std::int64_t> left, right;
    if (rem == 1) {
        // remainder is a single vertex per edge: its order across the clique
        // is a permutation, and permutation twins lift directly
        std::vector<std::int64_t> ends;
        ends.reserve(static_cast<std::size_t>(k));
        for (std::int64_t h : host) {
            auto e = m.edge(h);
            ends.push_back(clique_on_prefix ? e.back() : e.front());
        }
        PermutationTwins pt = permutation_twins(ends, params);
        if (pt.size == 0) return {};
        for (std::int64_t pos : pt.left) left.push_back(host[static_cast<std::size_t>(pos)]);
        for (std::int64_t pos : pt.right) right.push_back(host[static_cast<std::size_t>(pos)]);
    } else {
        // Remainder twins must follow the clique order, not just the
        // remainders' own order. Prepending a tag vertex that encodes the
        // clique rank (on the clique's side of the ground set) enforces that
        // while staying an ordinary matching one rank up.
        std::vector<Vertex> remainder_verts;
        remainder_verts.reserve(static_cast<std::size_t>(k * rem));
        for (std::int64_t h : host) {
            auto e = m.edge(h);
            auto tail = clique_on_prefix ? e.subspan(static_cast<std::size_t>(p))
                                         : e.subspan(0, static_cast<std::size_t>(p));
            remainder_verts.insert(remainder_verts.end(), tail.begin(), tail.end());
        }
        std::vector<Vertex> sorted_rem(remainder_verts);
        std::sort(sorted_rem.begin(), sorted_rem.end());
        auto rank_of = [&](Vertex v) {
            return static_cast<Vertex>(std::lower_bound(sorted_rem.begin(), sorted_rem.end(), v) -
                                       sorted_rem.begin()) + 1;
        };
        const std::int64_t total_rem = static_cast<std::int64_t>(sorted_rem.size());
        std::vector<std::pair<std::vector<Vertex>, std::int64_t>> tagged; // (edge, clique rank)
        tagged.reserve(static_cast<std::size_t>(k));
        for (std::int64_t g = 0; g < k; ++g) {
            std::vector<Vertex> e;
            e.reserve(static_cast<std::size_t>(rem) + 1);
            if (clique_on_prefix)
                e.push_back(g + 1); // tags sit below every remainder vertex
            else
                e.push_back(total_rem + g + 1); // tags sit above every remainder vertex
            for (int t = 0; t < rem; ++t) {
                const Vertex v = remainder_verts[static_cast<std::size_t>(g * rem + t)];
                e.push_back(clique_on_prefix ? rank_of(v) + k : rank_of(v));
            }
            tagged.emplace_back(std::move(e), g);
        }
        std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
            return *std::min_element(a.first.begin(), a.first.end()) <
                   *std::min_element(b.first.begin(), b.first.end());
        });
        std::vector<std::vector<Vertex>> tagged_edges;
        tagged_edges.reserve(tagged.size());
        for (auto& [e, g] : tagged) tagged_edges.push_back(e);
        OrderedMatching t_matching = OrderedMatching::from_edges(rem + 1, tagged_edges);
        TwinsCertificate cert = recurse(t_matching, params);
        if (cert.size == 0) return {};
        for (std::int64_t i : cert.left)
            left.push_back(host[static_cast<std::size_t>(tagged[static_cast<std::size_t>(i)].second)]);
        for (std::int64_t i : cert.right)
            right.push_back(host[static_cast<std::size_t>(tagged[static_cast<std::size_t>(i)].second)]);
    }
    return verified_or_empty(m, std::move(left), std::move(right));
}

TwinsCertificate recurse(const OrderedMatching& m, const BuilderParams& params) {
    TwinsCertificate best;
    const std::int64_t n = m.size();
    if (n < 2) return best;

    consider(best, verified_or_empty(m, {0}, {1})); // single edges are always twins

    // a homogeneous clique split in half is twins
    CliqueCertificate clique = clique_find(m, params);
    const std::int64_t half = static_cast<std::int64_t>(clique.members.size()) / 2;
    if (half >= 1) {
        std::vector<std::int64_t> left(clique.members.begin(), clique.members.begin() + half);
        std::vector<std::int64_t> right(clique.members.end() - half, clique.members.end());
        consider(best, verified_or_empty(m, std::move(left), std::move(right)));
    }

    if (!m.is_full()) return best;
    const int r = m.rank();
    const std::int64_t half_size = m.vertex_count() / 2;

    std::vector<std::vector<std::int64_t>> by_count(static_cast<std::size_t>(r) + 1);
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t inside = 0;
        for (Vertex v : m.edge(i))
            if (v <= half_size) ++inside;
        by_count[static_cast<std::size_t>(inside)].push_back(i);
    }

    // both halves hold whole edges: recurse on each and concatenate
    const auto& fully_left = by_count[static_cast<std::size_t>(r)];
    const auto& fully_right = by_count[0];
    if (!fully_left.empty() && !fully_right.empty()) {
        TwinsCertificate a = recurse_induced(m, fully_left, params);
        TwinsCertificate b = recurse_induced(m, fully_right, params);
        if (a.size + b.size > 0) {
            std::vector<std::int64_t> left(a.left), right(a.right);
            left.insert(left.end(), b.left.begin(), b.left.end());
            right.insert(right.end(), b.right.begin(), b.right.end());
            consider(best, verified_or_empty(m, std::move(left), std::move(right)));
        }
    }

    for (int p = 1; p < r; ++p) {
        const auto& idx = by_count[static_cast<std::size_t>(p)];
        if (static_cast<std::int64_t>(idx.size()) < 2) continue;
        consider(best, cross_case(m, idx, p, true, params));
        consider(best, cross_case(m, idx, p, false, params));
    }
    return best;
}

} // namespace

TwinsCertificate find_twins_recursive(const OrderedMatching& m, const BuilderParams& params) {
    if (m.rank() < 2) throw std::invalid_argument("twin finder needs rank >= 2");
    if (!m.is_full()) throw std::invalid_argument("twin finder needs a full matching");
    return recurse(m, params);
}

// --- bound recursion --------------------------------------------------------------------

namespace {

BigRat eta_exact(int k) {
    BigInt denom = (BigInt(1) << k) - 1;
    return BigRat(BigInt(1), denom);
}

double to_double(const BigRat& q) { return q.convert_to<double>(); }

} // namespace

BoundResult bound_calculator(std::int64_t n, int r, const BigRat& alpha, const BigRat& beta) {
    if (r < 2) throw std::invalid_argument("rank must be at least 2");
    if (n < 1) throw std::invalid_argument("size must be positive");
    if (alpha < BigRat(3, 5) || alpha > BigRat(2, 3))
        throw std::invalid_argument("alpha must lie in [3/5, 2/3]");
    if (beta <= 0) throw std::invalid_argument("beta must be positive");

    const double alpha_d = to_double(alpha);
    const double beta_d = to_double(beta);

    std::vector<double> coeff(static_cast<std::size_t>(r) + 1, 0.0);
    coeff[2] = beta_d;
    for (int s = 3; s <= r; ++s) {
        double value = beta_d * std::pow(2.0, -alpha_d);
        for (int p = 2; p <= s - 2; ++p) {
            const double eta_pm1 = to_double(eta_exact(p - 1));
            value = std::min(value, coeff[static_cast<std::size_t>(p)] *
                                        std::pow(12.0 * s, -alpha_d * eta_pm1));
        }
        coeff[static_cast<std::size_t>(s)] = value;
    }

    BoundResult out;
    out.beta_r = coeff[static_cast<std::size_t>(r)];
    if (r == 2) {
        out.bound_value = beta_d * std::pow(n / 4.0, alpha_d);
    } else {
        const double exponent = alpha_d * to_double(eta_exact(r - 1));
        out.bound_value = out.beta_r * std::pow(static_cast<double>(n) / (6.0 * r), exponent);
    }
    out.guaranteed = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(out.bound_value)));
    for (int s = 2; s <= r; ++s) {
        BoundRow row;
        row.rank = s;
        row.deterministic_exponent = alpha * eta_exact(s - 1);
        row.clique_only_exponent = eta_exact(s);
        row.random_exponent = BigRat(2, s + 1);
        out.exponents.push_back(std::move(row));
    }
    return out;
}

} // namespace omt
