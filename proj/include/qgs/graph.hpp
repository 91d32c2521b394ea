#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qgs/errors.hpp"
#include "qgs/matrix.hpp"

namespace qgs {

// Identifies one tail: the vertex it hangs off and a 1-based ordinal among
// the tails at that vertex.  Ordering follows the attachment list of the
// graph document, so label order is reproducible for a given input.
struct TailLabel {
    int vertex;
    int ordinal;

    bool operator==(const TailLabel&) const = default;

    std::string str() const {
        return "v" + std::to_string(vertex) + ".t" + std::to_string(ordinal);
    }
};

struct TailAttachment {
    int vertex;
    int count;

    bool operator==(const TailAttachment&) const = default;
};

// Finite undirected multigraph with semi-infinite tails attached at some
// vertices.  Edges repeat for multiplicity; (v, v) is a self-loop.
// Immutable after construction; the surgery helpers below return new graphs.
class TailedGraph {
public:
    TailedGraph(int n_vertices, std::vector<std::pair<int, int>> edges,
                std::vector<TailAttachment> tails)
        : n_(n_vertices), edges_(std::move(edges)), tails_(std::move(tails)) {
        if (n_ <= 0) throw InputError("graph must have at least one vertex");
        for (auto& [u, v] : edges_) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw InputError("edge vertex index out of range");
            if (u > v) std::swap(u, v);
        }
        for (const auto& t : tails_) {
            if (t.vertex < 0 || t.vertex >= n_)
                throw InputError("tail vertex index out of range");
            if (t.count < 1) throw InputError("tail count must be positive");
        }
        std::vector<int> seen(static_cast<std::size_t>(n_), 0);
        for (const auto& t : tails_)
            for (int m = 0; m < t.count; ++m)
                labels_.push_back({t.vertex, ++seen[static_cast<std::size_t>(t.vertex)]});
    }

    int n_vertices() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<TailAttachment>& tail_attachments() const { return tails_; }
    const std::vector<TailLabel>& tail_labels() const { return labels_; }

    // Total number of tails.
    int tail_count() const { return static_cast<int>(labels_.size()); }

    // Number of tails at one vertex.
    int tails_at(int v) const {
        int m = 0;
        for (const auto& t : tails_)
            if (t.vertex == v) m += t.count;
        return m;
    }

    std::vector<int> tailed_vertices() const {
        std::set<int> s;
        for (const auto& t : tails_) s.insert(t.vertex);
        return {s.begin(), s.end()};
    }

    int attachment_vertex(int label_index) const {
        return labels_.at(static_cast<std::size_t>(label_index)).vertex;
    }

    int edge_multiplicity(int u, int v) const {
        if (u > v) std::swap(u, v);
        int m = 0;
        for (const auto& e : edges_)
            if (e.first == u && e.second == v) ++m;
        return m;
    }

    bool has_edge(int u, int v) const { return edge_multiplicity(u, v) > 0; }

    bool operator==(const TailedGraph& other) const {
        auto sorted = [](std::vector<std::pair<int, int>> e) {
            std::sort(e.begin(), e.end());
            return e;
        };
        return n_ == other.n_ && sorted(edges_) == sorted(other.edges_) &&
               tails_ == other.tails_;
    }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<TailAttachment> tails_;
    std::vector<TailLabel> labels_;
};

inline TailedGraph parse_graph(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed graph document: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") ||
            !doc.contains("tails"))
            throw InputError("graph document needs keys vertices, edges, tails");
        const int n = doc.at("vertices").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw InputError("each edge must be a 2-element array");
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        std::vector<TailAttachment> tails;
        for (const auto& t : doc.at("tails"))
            tails.push_back({t.at("vertex").get<int>(), t.at("count").get<int>()});
        return TailedGraph(n, std::move(edges), std::move(tails));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed graph document: ") + e.what());
    }
}

inline std::string serialize_graph(const TailedGraph& g) {
    nlohmann::ordered_json doc;
    doc["vertices"] = g.n_vertices();
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v] : g.edges()) doc["edges"].push_back({u, v});
    doc["tails"] = nlohmann::ordered_json::array();
    for (const auto& t : g.tail_attachments())
        doc["tails"].push_back({{"vertex", t.vertex}, {"count", t.count}});
    return doc.dump();
}

// Minus the adjacency matrix; a self-loop contributes -2 on the diagonal and
// an edge of multiplicity m contributes -m off the diagonal, so that the
// tail-connection surgery and direct graph construction stay interchangeable.
inline RealSymmetricMatrix build_hamiltonian(const TailedGraph& g) {
    const auto n = static_cast<std::size_t>(g.n_vertices());
    RealSymmetricMatrix h(n, n);
    for (const auto& [u, v] : g.edges()) {
        const auto uu = static_cast<std::size_t>(u), vv = static_cast<std::size_t>(v);
        if (u == v) {
            h(uu, uu) -= 2.0;
        } else {
            h(uu, vv) -= 1.0;
            h(vv, uu) -= 1.0;
        }
    }
    return h;
}

struct TailOperators {
    RealSymmetricMatrix tail_count; // R: diagonal, entry v counts tails at v
    RealSymmetricMatrix complement; // Q = I - R
};

inline TailOperators build_tail_operators(const TailedGraph& g) {
    const auto n = static_cast<std::size_t>(g.n_vertices());
    TailOperators ops{RealSymmetricMatrix(n, n), RealSymmetricMatrix(n, n)};
    for (std::size_t v = 0; v < n; ++v) {
        ops.tail_count(v, v) = static_cast<double>(g.tails_at(static_cast<int>(v)));
        ops.complement(v, v) = 1.0 - ops.tail_count(v, v);
    }
    return ops;
}

struct GraphDiagnostics {
    int components = 0;
    std::vector<int> tailed_vertices;
    int total_tails = 0;
    int components_without_tails = 0;
    std::vector<std::string> warnings;
};

inline GraphDiagnostics validate(const TailedGraph& g) {
    const int n = g.n_vertices();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int n_comp = 0;
    for (int start = 0; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<int> stack{start};
        comp[static_cast<std::size_t>(start)] = n_comp;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : g.edges()) {
                int w = -1;
                if (a == v) w = b;
                else if (b == v) w = a;
                if (w >= 0 && comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = n_comp;
                    stack.push_back(w);
                }
            }
        }
        ++n_comp;
    }

    GraphDiagnostics d;
    d.components = n_comp;
    d.tailed_vertices = g.tailed_vertices();
    d.total_tails = g.tail_count();
    std::vector<bool> has_tail(static_cast<std::size_t>(n_comp), false);
    for (int v : d.tailed_vertices) has_tail[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = true;
    for (int c = 0; c < n_comp; ++c)
        if (!has_tail[static_cast<std::size_t>(c)]) ++d.components_without_tails;
    if (d.components_without_tails > 0)
        d.warnings.push_back("component without tails: hosts only bound states of the second kind");
    return d;
}

// ---- graph surgery -------------------------------------------------------
// These produce the modified graph whose scattering matrix the tail-update
// formulas predict; tests compare both routes.

namespace detail {

inline std::vector<TailAttachment> drop_one_tail(const TailedGraph& g, int label_index) {
    if (label_index < 0 || label_index >= g.tail_count())
        throw InputError("tail label out of range");
    std::vector<TailAttachment> tails;
    int remaining = label_index;
    bool removed = false;
    for (const auto& t : g.tail_attachments()) {
        if (!removed && remaining < t.count) {
            if (t.count > 1) tails.push_back({t.vertex, t.count - 1});
            removed = true;
        } else {
            if (!removed) remaining -= t.count;
            tails.push_back(t);
        }
    }
    return tails;
}

} // namespace detail

inline TailedGraph remove_tail(const TailedGraph& g, int label_index) {
    return TailedGraph(g.n_vertices(), g.edges(), detail::drop_one_tail(g, label_index));
}

// Removes the tail but keeps its first `stump_len` vertices as a path.
inline TailedGraph remove_tail_with_stump(const TailedGraph& g, int label_index, int stump_len) {
    if (stump_len < 0) throw InputError("stump length must be nonnegative");
    const int v = g.attachment_vertex(label_index);
    auto tails = detail::drop_one_tail(g, label_index);
    auto edges = g.edges();
    int prev = v;
    for (int i = 0; i < stump_len; ++i) {
        const int w = g.n_vertices() + i;
        edges.emplace_back(prev, w);
        prev = w;
    }
    return TailedGraph(g.n_vertices() + stump_len, std::move(edges), std::move(tails));
}

// New tail appended at the end of the attachment list, so its label sorts last.
inline TailedGraph add_tail(const TailedGraph& g, int vertex) {
    if (vertex < 0 || vertex >= g.n_vertices()) throw InputError("vertex index out of range");
    auto tails = g.tail_attachments();
    tails.push_back({vertex, 1});
    return TailedGraph(g.n_vertices(), g.edges(), std::move(tails));
}

// Replaces two tails by an edge between their attachment vertices
// (a self-loop when both hang off the same vertex).
inline TailedGraph connect_tails_in_graph(const TailedGraph& g, int label_a, int label_b) {
    if (label_a == label_b) throw InputError("cannot connect a tail to itself");
    const int va = g.attachment_vertex(label_a);
    const int vb = g.attachment_vertex(label_b);
    const int first = std::max(label_a, label_b);
    const int second = std::min(label_a, label_b);
    TailedGraph pruned = remove_tail(remove_tail(g, first), second);
    auto edges = pruned.edges();
    edges.emplace_back(std::min(va, vb), std::max(va, vb));
    return TailedGraph(pruned.n_vertices(), std::move(edges), pruned.tail_attachments());
}

// Second graph's vertices are shifted by the first graph's vertex count;
// tail labels concatenate in order.
inline TailedGraph disjoint_union(const TailedGraph& a, const TailedGraph& b) {
    const int off = a.n_vertices();
    auto edges = a.edges();
    for (const auto& [u, v] : b.edges()) edges.emplace_back(u + off, v + off);
    auto tails = a.tail_attachments();
    for (const auto& t : b.tail_attachments()) tails.push_back({t.vertex + off, t.count});
    return TailedGraph(a.n_vertices() + b.n_vertices(), std::move(edges), std::move(tails));
}

} // namespace qgs
