#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pathlap/errors.hpp"

namespace pathlap {

using vertex_id = int;
using edge = std::pair<vertex_id, vertex_id>;

// Simple directed graph: no self-loops, no duplicate edges; (u,v) and (v,u)
// may coexist. Immutable after construction.
class digraph {
public:
    digraph() = default;

    digraph(std::vector<vertex_id> vertices, std::vector<edge> edges) {
        std::set<vertex_id> seen;
        for (vertex_id v : vertices) {
            if (seen.insert(v).second) vertices_.push_back(v);
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& [u, v] = edges[i];
            if (u == v) throw std::invalid_argument("digraph: self-loop " + std::to_string(u));
            if (i > 0 && edges[i] == edges[i - 1])
                throw std::invalid_argument("digraph: duplicate edge " + std::to_string(u) + "->" +
                                            std::to_string(v));
            if (!seen.count(u) || !seen.count(v))
                throw std::invalid_argument("digraph: edge endpoint not in vertex list");
        }
        edges_ = std::move(edges);
        for (const auto& [u, v] : edges_) {
            out_[u].push_back(v);
            in_[v].push_back(u);
        }
        for (auto& [v, nb] : in_) std::sort(nb.begin(), nb.end());
        // out_ targets are already sorted because edges_ is sorted lexicographically.
    }

    // Convenience constructor collecting vertices from the edges themselves.
    static digraph from_edges(const std::vector<edge>& edges,
                              const std::vector<vertex_id>& extra_vertices = {}) {
        std::set<vertex_id> vs(extra_vertices.begin(), extra_vertices.end());
        for (const auto& [u, v] : edges) {
            vs.insert(u);
            vs.insert(v);
        }
        return digraph(std::vector<vertex_id>(vs.begin(), vs.end()), edges);
    }

    const std::vector<vertex_id>& vertices() const { return vertices_; }
    const std::vector<edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::vector<vertex_id> sorted_vertices() const {
        std::vector<vertex_id> v = vertices_;
        std::sort(v.begin(), v.end());
        return v;
    }

    bool contains_vertex(vertex_id v) const {
        return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
    }

    bool has_edge(vertex_id u, vertex_id v) const {
        return std::binary_search(edges_.begin(), edges_.end(), edge{u, v});
    }

    const std::vector<vertex_id>& out_neighbors(vertex_id v) const {
        static const std::vector<vertex_id> none;
        auto it = out_.find(v);
        return it == out_.end() ? none : it->second;
    }

    const std::vector<vertex_id>& in_neighbors(vertex_id v) const {
        static const std::vector<vertex_id> none;
        auto it = in_.find(v);
        return it == in_.end() ? none : it->second;
    }

    std::size_t degree(vertex_id v) const {
        return out_neighbors(v).size() + in_neighbors(v).size();
    }

    friend bool operator==(const digraph& a, const digraph& b) {
        return a.sorted_vertices() == b.sorted_vertices() && a.edges_ == b.edges_;
    }

    bool is_subgraph_of(const digraph& other) const {
        for (vertex_id v : vertices_)
            if (!other.contains_vertex(v)) return false;
        for (const auto& [u, v] : edges_)
            if (!other.has_edge(u, v)) return false;
        return true;
    }

    digraph remove_vertex(vertex_id v) const {
        std::vector<vertex_id> vs;
        for (vertex_id u : vertices_)
            if (u != v) vs.push_back(u);
        std::vector<edge> es;
        for (const auto& e : edges_)
            if (e.first != v && e.second != v) es.push_back(e);
        return digraph(std::move(vs), std::move(es));
    }

private:
    std::vector<vertex_id> vertices_; // input order, deduplicated
    std::vector<edge> edges_;         // lexicographically sorted, unique
    std::map<vertex_id, std::vector<vertex_id>> out_, in_;
};

// Digraph with a non-negative finite length per edge.
class weighted_digraph {
public:
    weighted_digraph() = default;

    weighted_digraph(digraph base, std::map<edge, double> weights)
        : base_(std::move(base)), weights_(std::move(weights)) {
        for (const auto& e : base_.edges()) {
            auto it = weights_.find(e);
            if (it == weights_.end())
                throw std::invalid_argument("weighted_digraph: edge without weight");
            if (!std::isfinite(it->second) || it->second < 0.0)
                throw std::invalid_argument("weighted_digraph: weight must be finite and >= 0");
        }
        if (weights_.size() != base_.edge_count())
            throw std::invalid_argument("weighted_digraph: weight for unknown edge");
    }

    const digraph& base() const { return base_; }
    double weight(const edge& e) const { return weights_.at(e); }
    const std::map<edge, double>& weights() const { return weights_; }

    double max_weight() const {
        double m = 0.0;
        for (const auto& [e, w] : weights_) m = std::max(m, w);
        return m;
    }

private:
    digraph base_;
    std::map<edge, double> weights_;
};

// Sub-digraph with every edge of weight <= delta. Weight comparison is exact
// on the stored doubles; no epsilon, so distinct critical values stay distinct.
inline digraph subgraph_at(const weighted_digraph& g, double delta, bool keep_isolated) {
    std::vector<edge> edges;
    for (const auto& [e, w] : g.weights())
        if (w <= delta) edges.push_back(e);

    std::vector<vertex_id> vertices;
    if (keep_isolated) {
        vertices = g.base().vertices();
    } else {
        std::set<vertex_id> used;
        for (const auto& [u, v] : edges) {
            used.insert(u);
            used.insert(v);
        }
        for (vertex_id v : g.base().vertices())
            if (used.count(v)) vertices.push_back(v);
    }
    return digraph(std::move(vertices), std::move(edges));
}

// Critical filtration values: 0 followed by the sorted distinct edge weights.
inline std::vector<double> filtration_thresholds(const weighted_digraph& g) {
    std::set<double> w;
    w.insert(0.0);
    for (const auto& [e, wt] : g.weights()) w.insert(wt);
    return std::vector<double>(w.begin(), w.end());
}

} // namespace pathlap
