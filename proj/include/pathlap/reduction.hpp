#pragma once

#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "pathlap/digraph.hpp"

namespace pathlap {

enum class reduction_kind { source_fan, sink_fan, transit };

// Which part of the transit-vertex statement applied: the reduced graph still
// links the detour endpoints by an edge or a directed 2-path (a semi-edge),
// the endpoints stayed weakly connected without such a link, or the removal
// split them into different components.
enum class transit_clause { edge_or_semi_edge, same_component, split_component };

struct reduction_step {
    reduction_kind kind;
    vertex_id removed_vertex;
    std::vector<edge> removed_edges;
    std::optional<transit_clause> clause; // transit only
};

namespace detail {

inline bool weakly_connected(const digraph& g, vertex_id a, vertex_id b) {
    if (!g.contains_vertex(a) || !g.contains_vertex(b)) return false;
    std::set<vertex_id> seen{a};
    std::deque<vertex_id> queue{a};
    while (!queue.empty()) {
        vertex_id v = queue.front();
        queue.pop_front();
        if (v == b) return true;
        for (vertex_id w : g.out_neighbors(v))
            if (seen.insert(w).second) queue.push_back(w);
        for (vertex_id w : g.in_neighbors(v))
            if (seen.insert(w).second) queue.push_back(w);
    }
    return false;
}

inline std::vector<edge> incident_edges(const digraph& g, vertex_id v) {
    std::vector<edge> es;
    for (vertex_id w : g.out_neighbors(v)) es.push_back({v, w});
    for (vertex_id w : g.in_neighbors(v)) es.push_back({w, v});
    return es;
}

// Edge a->b or a directed 2-path a->x->b. The removed detour a->v->b was
// itself such a 2-path; homology is unaffected exactly when another one (or a
// direct edge) remains. A reverse edge b->a does not qualify: it closes a
// directed cycle instead and raises dim H_1.
inline bool has_edge_or_semi_edge(const digraph& g, vertex_id a, vertex_id b) {
    if (g.has_edge(a, b)) return true;
    for (vertex_id x : g.out_neighbors(a))
        if (g.has_edge(x, b)) return true;
    return false;
}

} // namespace detail

// Source fan: v has no incoming edges and some out-neighbor reaches every
// other out-neighbor directly. Removing v preserves path homology.
inline std::optional<std::pair<digraph, reduction_step>> try_source_fan(const digraph& g,
                                                                        vertex_id v) {
    if (!g.contains_vertex(v)) return std::nullopt;
    if (!g.in_neighbors(v).empty()) return std::nullopt;
    const auto& out = g.out_neighbors(v);
    if (out.empty()) return std::nullopt;
    bool has_hub = false;
    for (vertex_id hub : out) {
        bool ok = true;
        for (vertex_id u : out)
            if (u != hub && !g.has_edge(hub, u)) {
                ok = false;
                break;
            }
        if (ok) {
            has_hub = true;
            break;
        }
    }
    if (!has_hub) return std::nullopt;
    reduction_step step{reduction_kind::source_fan, v, detail::incident_edges(g, v), {}};
    return std::make_pair(g.remove_vertex(v), step);
}

// Sink fan: the arrow-reversed mirror of the source fan.
inline std::optional<std::pair<digraph, reduction_step>> try_sink_fan(const digraph& g,
                                                                      vertex_id v) {
    if (!g.contains_vertex(v)) return std::nullopt;
    if (!g.out_neighbors(v).empty()) return std::nullopt;
    const auto& in = g.in_neighbors(v);
    if (in.empty()) return std::nullopt;
    bool has_hub = false;
    for (vertex_id hub : in) {
        bool ok = true;
        for (vertex_id u : in)
            if (u != hub && !g.has_edge(u, hub)) {
                ok = false;
                break;
            }
        if (ok) {
            has_hub = true;
            break;
        }
    }
    if (!has_hub) return std::nullopt;
    reduction_step step{reduction_kind::sink_fan, v, detail::incident_edges(g, v), {}};
    return std::make_pair(g.remove_vertex(v), step);
}

// Transit vertex: exactly one incoming edge a->v and one outgoing edge v->b
// with a != b. The clause records how a and b relate in the reduced graph,
// which determines the Betti bookkeeping:
//   edge_or_semi_edge -> dim H_0 and dim H_1 unchanged
//   same_component    -> dim H_1 drops by one, dim H_0 unchanged
//   split_component   -> dim H_0 grows by one, dim H_1 unchanged
inline std::optional<std::pair<digraph, reduction_step>> try_transit(const digraph& g,
                                                                     vertex_id v) {
    if (!g.contains_vertex(v)) return std::nullopt;
    const auto& in = g.in_neighbors(v);
    const auto& out = g.out_neighbors(v);
    if (in.size() != 1 || out.size() != 1) return std::nullopt;
    const vertex_id a = in[0], b = out[0];
    if (a == b) return std::nullopt;

    digraph reduced = g.remove_vertex(v);
    transit_clause clause;
    if (detail::has_edge_or_semi_edge(reduced, a, b))
        clause = transit_clause::edge_or_semi_edge;
    else if (detail::weakly_connected(reduced, a, b))
        clause = transit_clause::same_component;
    else
        clause = transit_clause::split_component;

    reduction_step step{reduction_kind::transit, v, {{a, v}, {v, b}}, clause};
    return std::make_pair(std::move(reduced), step);
}

// Greedy fixpoint: scan vertices in ascending id order, apply the first rule
// that fires, restart. The fixpoint is deterministic but not claimed minimal.
inline std::pair<digraph, std::vector<reduction_step>> reduce_to_fixpoint(digraph g) {
    std::vector<reduction_step> log;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<vertex_id> order = g.sorted_vertices();
        for (vertex_id v : order) {
            auto applied = try_source_fan(g, v);
            if (!applied) applied = try_sink_fan(g, v);
            if (!applied) applied = try_transit(g, v);
            if (applied) {
                g = std::move(applied->first);
                log.push_back(std::move(applied->second));
                changed = true;
                break;
            }
        }
    }
    return {std::move(g), std::move(log)};
}

} // namespace pathlap
