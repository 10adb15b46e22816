#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pathlap/digraph.hpp"
#include "pathlap/errors.hpp"

namespace pathlap {

struct point {
    std::string label;
    double x = 0.0, y = 0.0, z = 0.0;
};

struct point_cloud {
    std::vector<point> points;
    std::size_t size() const { return points.size(); }
};

// label -> precedence score; edges point from lower to higher score.
using precedence_table = std::map<std::string, double>;

// Pauling electronegativities for the elements the pipeline is used with.
inline precedence_table default_electronegativity() {
    return {{"H", 2.20}, {"C", 2.55}, {"N", 3.04}, {"O", 3.44}};
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline double parse_double(const std::string& tok, std::size_t line_no, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw parse_error(line_no, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (used != tok.size())
        throw parse_error(line_no, std::string("expected ") + what + ", got '" + tok + "'");
    return v;
}

inline long parse_vertex(const std::string& tok, std::size_t line_no) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw parse_error(line_no, "expected vertex id, got '" + tok + "'");
    }
    if (used != tok.size() || v < 0)
        throw parse_error(line_no, "expected non-negative vertex id, got '" + tok + "'");
    return v;
}

} // namespace detail

// XYZ layout: atom count, comment line, then one `label x y z` row per atom.
inline point_cloud parse_xyz(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw parse_error(1, "empty file, expected atom count");
    ++line_no;
    const auto head = detail::split_ws(line);
    if (head.size() != 1)
        throw parse_error(line_no, "expected a single atom count");
    const long count = detail::parse_vertex(head[0], line_no);

    if (!std::getline(in, line) && count > 0)
        throw parse_error(line_no + 1, "missing comment line");
    ++line_no;

    point_cloud cloud;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (static_cast<long>(cloud.points.size()) >= count)
            throw parse_error(line_no, "more atom rows than the declared count of " +
                                           std::to_string(count));
        if (toks.size() != 4)
            throw parse_error(line_no, "expected 'label x y z'");
        point p;
        p.label = toks[0];
        p.x = detail::parse_double(toks[1], line_no, "x coordinate");
        p.y = detail::parse_double(toks[2], line_no, "y coordinate");
        p.z = detail::parse_double(toks[3], line_no, "z coordinate");
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw parse_error(line_no, "coordinate is not finite");
        cloud.points.push_back(std::move(p));
    }
    if (static_cast<long>(cloud.points.size()) != count)
        throw parse_error(line_no, "declared " + std::to_string(count) + " atoms but found " +
                                       std::to_string(cloud.points.size()));
    return cloud;
}

// Config format: one `LABEL score` pair per line, `#` comments.
inline precedence_table parse_precedence(std::string_view text) {
    precedence_table table;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#') continue;
        const auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw parse_error(line_no, "expected 'LABEL score'");
        const double score = detail::parse_double(toks[1], line_no, "score");
        if (!table.emplace(toks[0], score).second)
            throw parse_error(line_no, "duplicate label '" + toks[0] + "'");
    }
    return table;
}

// One vertex per point; every pair within the cutoff becomes a single directed
// edge from lower to higher precedence score, weighted by Euclidean distance.
// Equal scores are broken by index: lower index -> higher index.
inline weighted_digraph directed_complete_graph(const point_cloud& cloud,
                                                const precedence_table& table, double cutoff) {
    if (!(cutoff > 0.0)) throw config_error("cutoff must be positive");
    std::vector<double> score(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto it = table.find(cloud.points[i].label);
        if (it == table.end())
            throw config_error("no precedence score for label '" + cloud.points[i].label + "'");
        score[i] = it->second;
    }
    std::vector<vertex_id> vertices;
    for (std::size_t i = 0; i < cloud.size(); ++i) vertices.push_back(static_cast<vertex_id>(i));

    std::vector<edge> edges;
    std::map<edge, double> weights;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = i + 1; j < cloud.size(); ++j) {
            const double dx = cloud.points[i].x - cloud.points[j].x;
            const double dy = cloud.points[i].y - cloud.points[j].y;
            const double dz = cloud.points[i].z - cloud.points[j].z;
            const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
            if (dist > cutoff) continue;
            edge e = score[i] <= score[j] ? edge{static_cast<vertex_id>(i),
                                                 static_cast<vertex_id>(j)}
                                          : edge{static_cast<vertex_id>(j),
                                                 static_cast<vertex_id>(i)};
            edges.push_back(e);
            weights.emplace(e, dist);
        }
    }
    return weighted_digraph(digraph(std::move(vertices), std::move(edges)), std::move(weights));
}

// Edge-list text: `u v w` per line (weight optional, default 1), lone `u`
// registers an isolated vertex, `#` starts a comment line.
inline weighted_digraph load_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::vector<vertex_id> vertices; // order of first appearance
    std::set<vertex_id> seen;
    std::vector<edge> edges;
    std::map<edge, double> weights;

    const auto touch = [&](vertex_id v) {
        if (seen.insert(v).second) vertices.push_back(v);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#') continue;
        const auto toks = detail::split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() == 1) {
            touch(static_cast<vertex_id>(detail::parse_vertex(toks[0], line_no)));
            continue;
        }
        if (toks.size() > 3) throw parse_error(line_no, "expected 'u v [w]'");
        const vertex_id u = static_cast<vertex_id>(detail::parse_vertex(toks[0], line_no));
        const vertex_id v = static_cast<vertex_id>(detail::parse_vertex(toks[1], line_no));
        if (u == v) throw parse_error(line_no, "self-loop " + std::to_string(u));
        double w = 1.0;
        if (toks.size() == 3) {
            w = detail::parse_double(toks[2], line_no, "weight");
            if (!std::isfinite(w) || w < 0.0)
                throw parse_error(line_no, "weight must be finite and >= 0");
        }
        if (!weights.emplace(edge{u, v}, w).second)
            throw parse_error(line_no, "duplicate edge " + std::to_string(u) + " " +
                                           std::to_string(v));
        touch(u);
        touch(v);
        edges.push_back({u, v});
    }
    return weighted_digraph(digraph(std::move(vertices), std::move(edges)), std::move(weights));
}

} // namespace pathlap
