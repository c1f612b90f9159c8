#include "omt/matching.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace omt {

namespace {

void validate_flat(int rank, const std::vector<Vertex>& verts) {
    if (rank < 1) throw ParseError("matching rank must be at least 1");
    if (verts.size() % static_cast<std::size_t>(rank) != 0)
        throw ParseError("vertex list length is not a multiple of the rank");
    const std::int64_t n = static_cast<std::int64_t>(verts.size()) / rank;
    for (std::int64_t i = 0; i < n; ++i) {
        for (int k = 1; k < rank; ++k) {
            if (verts[i * rank + k - 1] >= verts[i * rank + k])
                throw ParseError("edge vertices must be strictly increasing");
        }
    }
    std::vector<Vertex> all(verts);
    std::sort(all.begin(), all.end());
    if (!all.empty() && all.front() < 1) throw ParseError("vertices must be positive");
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i] == all[i - 1]) throw ParseError("edges must be pairwise disjoint");
    }
    for (std::int64_t i = 1; i < n; ++i) {
        if (verts[(i - 1) * rank] >= verts[i * rank])
            throw ParseError("edges must be sorted by leftmost vertex");
    }
}

} // namespace

OrderedMatching::OrderedMatching(int rank, std::vector<Vertex> flat_vertices)
    : rank_(rank), verts_(std::move(flat_vertices)) {
    if (rank_ < 1) throw ParseError("matching rank must be at least 1");
    const std::size_t r = static_cast<std::size_t>(rank_);
    if (verts_.size() % r != 0)
        throw ParseError("vertex list length is not a multiple of the rank");
    // Normalize: sort within each edge, then edges by leftmost vertex.
    for (std::size_t off = 0; off + r <= verts_.size(); off += r)
        std::sort(verts_.begin() + off, verts_.begin() + off + r);
    const std::int64_t n = static_cast<std::int64_t>(verts_.size() / r);
    std::vector<std::int64_t> order(n);
    for (std::int64_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return verts_[a * rank_] < verts_[b * rank_];
    });
    std::vector<Vertex> sorted;
    sorted.reserve(verts_.size());
    for (std::int64_t i : order)
        sorted.insert(sorted.end(), verts_.begin() + i * rank_, verts_.begin() + (i + 1) * rank_);
    verts_ = std::move(sorted);
    validate_flat(rank_, verts_);
}

OrderedMatching OrderedMatching::from_edges(int rank, const std::vector<std::vector<Vertex>>& edges) {
    std::vector<Vertex> flat;
    flat.reserve(edges.size() * static_cast<std::size_t>(rank > 0 ? rank : 0));
    for (const auto& e : edges) {
        if (static_cast<int>(e.size()) != rank)
            throw ParseError("edge has wrong number of vertices");
        flat.insert(flat.end(), e.begin(), e.end());
    }
    return OrderedMatching(rank, std::move(flat));
}

bool OrderedMatching::is_full() const {
    std::vector<Vertex> all(verts_);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i] != static_cast<Vertex>(i) + 1) return false;
    }
    return true;
}

OrderedMatching OrderedMatching::induced(std::span<const std::int64_t> edge_indices) const {
    std::vector<Vertex> flat;
    flat.reserve(edge_indices.size() * static_cast<std::size_t>(rank_));
    for (std::int64_t i : edge_indices) {
        if (i < 0 || i >= size()) throw VerifyError(VerifyError::Kind::index_range, "edge index out of range");
        auto e = edge(i);
        flat.insert(flat.end(), e.begin(), e.end());
    }
    return OrderedMatching(rank_, std::move(flat));
}

OrderedMatching OrderedMatching::canonicalized() const {
    std::vector<Vertex> all(verts_);
    std::sort(all.begin(), all.end());
    std::vector<Vertex> flat(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        auto it = std::lower_bound(all.begin(), all.end(), verts_[i]);
        flat[i] = static_cast<Vertex>(it - all.begin()) + 1;
    }
    return OrderedMatching(rank_, std::move(flat));
}

// --- Pattern -----------------------------------------------------------------

Pattern::Pattern(int rank, std::uint64_t later_edge_mask) : rank_(rank), mask_(later_edge_mask) {
    if (rank_ < 1 || rank_ > 31) throw ParseError("pattern rank out of range");
    if (mask_ & 1) throw ParseError("pattern must start with A");
    if (std::popcount(mask_) != rank_ || (mask_ >> (2 * rank_)) != 0)
        throw ParseError("pattern must contain rank letters of each kind");
}

Pattern Pattern::parse(std::string_view word) {
    if (word.empty() || word.size() % 2 != 0) throw ParseError("pattern word must have even length");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] == 'B')
            mask |= std::uint64_t{1} << i;
        else if (word[i] != 'A')
            throw ParseError("pattern word may only contain A and B");
    }
    return Pattern(static_cast<int>(word.size() / 2), mask);
}

std::string Pattern::word() const {
    std::string w(static_cast<std::size_t>(2 * rank_), 'A');
    for (int i = 0; i < 2 * rank_; ++i)
        if (mask_ & (std::uint64_t{1} << i)) w[static_cast<std::size_t>(i)] = 'B';
    return w;
}

std::strong_ordering Pattern::operator<=>(const Pattern& other) const {
    if (auto c = rank_ <=> other.rank_; c != 0) return c;
    const int len = 2 * rank_;
    for (int i = 0; i < len; ++i) {
        const bool a = mask_ & (std::uint64_t{1} << i);
        const bool b = other.mask_ & (std::uint64_t{1} << i);
        if (a != b) return a ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

// --- Permutation --------------------------------------------------------------

Permutation::Permutation(std::vector<std::int64_t> v) : values(std::move(v)) {
    std::vector<bool> seen(values.size(), false);
    for (std::int64_t x : values) {
        if (x < 1 || x > static_cast<std::int64_t>(values.size()) || seen[static_cast<std::size_t>(x - 1)])
            throw ParseError("not a permutation of 1..m");
        seen[static_cast<std::size_t>(x - 1)] = true;
    }
}

std::vector<std::int32_t> standardize(std::span<const std::int64_t> values) {
    std::vector<std::int64_t> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::int32_t> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
        ranks[i] = static_cast<std::int32_t>(it - sorted.begin()) + 1;
    }
    return ranks;
}

Permutation parse_permutation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::int64_t> vals;
    std::int64_t x;
    while (in >> x) vals.push_back(x);
    if (vals.empty()) throw ParseError("empty permutation");
    return Permutation(std::move(vals));
}

// --- words ---------------------------------------------------------------------

namespace {

// Edge label of every position of the sub-matching, in ground order.
std::vector<std::int32_t> merged_labels(const OrderedMatching& m, std::span<const std::int64_t> idx) {
    std::vector<std::pair<Vertex, std::int32_t>> pos;
    pos.reserve(idx.size() * static_cast<std::size_t>(m.rank()));
    // `idx` must be ascending, so label order = order of leftmost vertices.
    std::int32_t label = 0;
    for (std::int64_t i : idx) {
        for (Vertex v : m.edge(i)) pos.emplace_back(v, label);
        ++label;
    }
    std::sort(pos.begin(), pos.end());
    std::vector<std::int32_t> labels;
    labels.reserve(pos.size());
    for (auto& [v, l] : pos) labels.push_back(l);
    return labels;
}

std::vector<std::int64_t> all_indices(const OrderedMatching& m) {
    std::vector<std::int64_t> idx(static_cast<std::size_t>(m.size()));
    for (std::int64_t i = 0; i < m.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
    return idx;
}

std::string labels_to_word(const std::vector<std::int32_t>& labels, std::int64_t n) {
    std::string out;
    if (n <= 26) {
        out.reserve(labels.size());
        for (std::int32_t l : labels) out.push_back(static_cast<char>('A' + l));
    } else {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i) out.push_back(' ');
            out += std::to_string(labels[i] + 1);
        }
    }
    return out;
}

} // namespace

std::string to_word(const OrderedMatching& m) {
    return labels_to_word(merged_labels(m, all_indices(m)), m.size());
}

std::string canonical_form(const OrderedMatching& m) { return to_word(m); }

std::string canonical_form(const OrderedMatching& m, std::span<const std::int64_t> edge_indices) {
    return labels_to_word(merged_labels(m, edge_indices),
                          static_cast<std::int64_t>(edge_indices.size()));
}

std::string canonical_key(const OrderedMatching& m, std::span<const std::int64_t> edge_indices) {
    auto labels = merged_labels(m, edge_indices);
    std::string key;
    key.reserve(labels.size() * 2);
    for (std::int32_t l : labels) {
        key.push_back(static_cast<char>(l & 0xff));
        key.push_back(static_cast<char>((l >> 8) & 0xff));
    }
    return key;
}

OrderedMatching parse_word(std::string_view text) {
    std::vector<std::string> symbols;
    bool letters_only = !text.empty();
    for (char c : text) {
        if (!std::isalpha(static_cast<unsigned char>(c)) && !std::isspace(static_cast<unsigned char>(c))) {
            letters_only = false;
            break;
        }
    }
    const bool has_space = text.find_first_of(" \t\r\n") != std::string_view::npos;
    if (letters_only && !has_space) {
        for (char c : text) symbols.emplace_back(1, c);
    } else {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) symbols.push_back(tok);
    }
    if (symbols.empty()) throw ParseError("empty word");

    std::vector<std::string> order;               // symbols by first occurrence
    std::map<std::string, std::vector<Vertex>> edges;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        auto [it, inserted] = edges.try_emplace(symbols[i]);
        if (inserted) order.push_back(symbols[i]);
        it->second.push_back(static_cast<Vertex>(i) + 1);
    }
    const std::size_t mult = edges[order.front()].size();
    for (const auto& [sym, pos] : edges) {
        if (pos.size() != mult)
            throw ParseError("symbol '" + sym + "' occurs " + std::to_string(pos.size()) +
                             " times, '" + order.front() + "' occurs " + std::to_string(mult));
    }
    if (mult < 2) throw ParseError("every symbol must occur at least twice");

    std::vector<std::vector<Vertex>> edge_list;
    edge_list.reserve(order.size());
    for (const auto& sym : order) edge_list.push_back(edges[sym]);
    return OrderedMatching::from_edges(static_cast<int>(mult), edge_list);
}

// --- patterns --------------------------------------------------------------------

Pattern pattern_of(std::span<const Vertex> e, std::span<const Vertex> f) {
    if (e.size() != f.size()) throw ParseError("edges of different rank have no pattern");
    if (e.empty()) throw ParseError("empty edges have no pattern");
    if (e.front() > f.front()) std::swap(e, f);
    std::uint64_t mask = 0;
    std::size_t i = 0, j = 0, pos = 0;
    while (i < e.size() || j < f.size()) {
        if (j >= f.size() || (i < e.size() && e[i] < f[j])) {
            ++i;
        } else if (i >= e.size() || f[j] < e[i]) {
            mask |= std::uint64_t{1} << pos;
            ++j;
        } else {
            throw VerifyError(VerifyError::Kind::overlap, "edges intersect");
        }
        ++pos;
    }
    return Pattern(static_cast<int>(e.size()), mask);
}

Pattern pattern_of(const OrderedMatching& m, std::int64_t i, std::int64_t j) {
    return pattern_of(m.edge(i), m.edge(j));
}

namespace {

void gen_patterns(int a_left, int b_left, std::uint64_t mask, int pos, std::vector<Pattern>& out, int rank) {
    if (a_left == 0 && b_left == 0) {
        out.emplace_back(rank, mask);
        return;
    }
    if (a_left > 0) gen_patterns(a_left - 1, b_left, mask, pos + 1, out, rank);
    if (b_left > 0 && pos > 0)
        gen_patterns(a_left, b_left - 1, mask | (std::uint64_t{1} << pos), pos + 1, out, rank);
}

} // namespace

std::vector<Pattern> enumerate_patterns(int r) {
    if (r < 2) throw ParseError("patterns are defined for rank >= 2");
    std::vector<Pattern> out;
    // First position is forced to A; choosing A before B yields lex order.
    gen_patterns(r - 1, r, 0, 1, out, r);
    return out;
}

// --- twins --------------------------------------------------------------------------

TwinsCertificate verify_twins(const OrderedMatching& m,
                              std::vector<std::int64_t> left,
                              std::vector<std::int64_t> right) {
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    for (const auto* side : {&left, &right}) {
        for (std::size_t i = 0; i < side->size(); ++i) {
            if ((*side)[i] < 0 || (*side)[i] >= m.size())
                throw VerifyError(VerifyError::Kind::index_range, "edge index out of range");
            if (i > 0 && (*side)[i] == (*side)[i - 1])
                throw VerifyError(VerifyError::Kind::overlap, "repeated edge index");
        }
    }
    if (left.size() != right.size())
        throw VerifyError(VerifyError::Kind::size_mismatch, "sides have different sizes");
    std::vector<std::int64_t> inter;
    std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(inter));
    if (!inter.empty())
        throw VerifyError(VerifyError::Kind::overlap, "sides share an edge");
    if (canonical_key(m, left) != canonical_key(m, right))
        throw VerifyError(VerifyError::Kind::not_isomorphic, "sub-matchings are not isomorphic");
    TwinsCertificate cert;
    cert.size = static_cast<std::int64_t>(left.size());
    cert.left = std::move(left);
    cert.right = std::move(right);
    return cert;
}

// --- JSON ------------------------------------------------------------------------------

std::string matching_to_json(const OrderedMatching& m) {
    nlohmann::json j;
    j["r"] = m.rank();
    auto edges = nlohmann::json::array();
    for (std::int64_t i = 0; i < m.size(); ++i) {
        auto e = m.edge(i);
        edges.push_back(std::vector<Vertex>(e.begin(), e.end()));
    }
    j["edges"] = std::move(edges);
    return j.dump();
}

OrderedMatching matching_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("r") || !j.contains("edges"))
        throw ParseError("matching JSON needs fields \"r\" and \"edges\"");
    const int r = j["r"].get<int>();
    std::vector<std::vector<Vertex>> edges;
    for (const auto& e : j["edges"]) edges.push_back(e.get<std::vector<Vertex>>());
    return OrderedMatching::from_edges(r, edges);
}

} // namespace omt
