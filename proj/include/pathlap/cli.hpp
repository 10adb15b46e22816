#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pathlap/pathlap.hpp"

namespace pathlap::cli {

// Everything data-bearing is rendered with 12 significant digits.
inline std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Round through the 12-digit representation so JSON output matches the
// textual contract exactly.
inline double round_g12(double v) { return std::strtod(format_g12(v).c_str(), nullptr); }

struct run_config {
    std::string input_path;
    std::string format; // edgelist | xyz, inferred from the extension if empty
    std::vector<int> dims = {0, 1, 2};
    bool keep_isolated = false;
    double cutoff = 0.0; // xyz only
    std::string precedence_path;
    bool reduce = false;
    std::string output; // json | csv
    std::optional<double> tolerance;
    std::optional<std::size_t> max_paths;
    bool strict = false;
    int grid = 0; // persist: resample onto this many uniform thresholds
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string effective_format(const run_config& cfg) {
    if (!cfg.format.empty()) return cfg.format;
    const auto dot = cfg.input_path.rfind('.');
    if (dot != std::string::npos && cfg.input_path.substr(dot) == ".xyz") return "xyz";
    return "edgelist";
}

inline weighted_digraph load_input(const run_config& cfg) {
    const std::string text = read_file(cfg.input_path);
    if (effective_format(cfg) == "xyz") {
        if (!(cfg.cutoff > 0.0))
            throw config_error("xyz input requires --cutoff (no default)");
        const precedence_table table = cfg.precedence_path.empty()
                                           ? default_electronegativity()
                                           : parse_precedence(read_file(cfg.precedence_path));
        return directed_complete_graph(parse_xyz(text), table, cfg.cutoff);
    }
    if (cfg.cutoff > 0.0) throw config_error("--cutoff only applies to xyz input");
    return load_edge_list(text);
}

inline analyzer_options make_options(const run_config& cfg) {
    analyzer_options opt;
    if (cfg.max_paths) {
        opt.max_paths = *cfg.max_paths;
    } else if (const char* env = std::getenv("PATHLAP_MAX_PATHS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw config_error("PATHLAP_MAX_PATHS must be a positive integer");
        opt.max_paths = static_cast<std::size_t>(v);
    }
    opt.zero_tolerance = cfg.tolerance;
    return opt;
}

inline const char* kind_name(reduction_kind k) {
    switch (k) {
        case reduction_kind::source_fan: return "source-fan";
        case reduction_kind::sink_fan: return "sink-fan";
        case reduction_kind::transit: return "transit";
    }
    return "?";
}

inline const char* clause_name(transit_clause c) {
    switch (c) {
        case transit_clause::edge_or_semi_edge: return "edge-or-semi-edge";
        case transit_clause::same_component: return "same-component";
        case transit_clause::split_component: return "split-component";
    }
    return "?";
}

inline nlohmann::ordered_json reduction_log_json(const std::vector<reduction_step>& log) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& step : log) {
        nlohmann::ordered_json j;
        j["kind"] = kind_name(step.kind);
        j["vertex"] = step.removed_vertex;
        nlohmann::ordered_json edges = nlohmann::ordered_json::array();
        for (const auto& [u, v] : step.removed_edges) edges.push_back({u, v});
        j["removed_edges"] = std::move(edges);
        if (step.clause) j["clause"] = clause_name(*step.clause);
        arr.push_back(std::move(j));
    }
    return arr;
}

struct record {
    int dimension;
    std::size_t omega_dim;
    long long betti;
    spectrum spec;
    bool nullity_matches;
};

// Eigenvalues the tolerance classified as harmonic are rendered as exact
// zeros; everything else keeps its numerical value.
inline std::vector<double> printable_eigenvalues(const spectrum& s) {
    std::vector<double> out = s.eigenvalues;
    for (std::size_t i = 0; i < s.zero_count && i < out.size(); ++i) out[i] = 0.0;
    return out;
}

inline nlohmann::ordered_json record_json(const record& r) {
    nlohmann::ordered_json j;
    j["dimension"] = r.dimension;
    j["omega_dim"] = r.omega_dim;
    j["betti"] = r.betti;
    nlohmann::ordered_json eig = nlohmann::ordered_json::array();
    for (double v : printable_eigenvalues(r.spec)) eig.push_back(round_g12(v));
    j["eigenvalues"] = std::move(eig);
    if (r.spec.fiedler)
        j["fiedler"] = round_g12(*r.spec.fiedler);
    else
        j["fiedler"] = nullptr;
    return j;
}

inline void append_record_csv(std::ostream& out, const record& r) {
    out << r.dimension << ',' << r.omega_dim << ',' << r.betti << ',';
    if (r.spec.fiedler) out << format_g12(*r.spec.fiedler);
    for (double v : printable_eigenvalues(r.spec)) out << ',' << format_g12(v);
    out << '\n';
}

// Diagnostics go to the error stream so the data stream stays clean; under
// --strict any nullity disagreement becomes the exit status.
inline int finish_with_diagnostics(const std::vector<std::string>& diagnostics,
                                   bool strict, std::ostream& err) {
    for (const auto& d : diagnostics) err << "warning: " << d << '\n';
    if (strict && !diagnostics.empty()) {
        err << "error: nullity diagnostics escalated by --strict\n";
        return 3;
    }
    return 0;
}

inline int cmd_spectra(const run_config& cfg, std::ostream& out, std::ostream& err) {
    const weighted_digraph input = load_input(cfg);
    digraph g = input.base();
    std::vector<reduction_step> log;
    if (cfg.reduce) std::tie(g, log) = reduce_to_fixpoint(g);

    path_analyzer an(g, make_options(cfg));
    std::vector<record> records;
    std::vector<std::string> diagnostics;
    for (int n : cfg.dims) {
        const auto r = an.laplacian(n);
        records.push_back({n, r.omega_dim, r.betti, r.spec, r.nullity_matches});
        if (!r.nullity_matches)
            diagnostics.push_back("dimension " + std::to_string(n) + ": exact betti " +
                                  std::to_string(r.betti) + " != eigenvalue zero count " +
                                  std::to_string(r.spec.zero_count));
    }

    if (cfg.output == "csv") {
        out << "# pathlap spectra v1\n";
        out << "n,omega_dim,betti,fiedler,eigenvalues\n";
        for (const auto& r : records) append_record_csv(out, r);
    } else {
        nlohmann::ordered_json j;
        j["schema"] = "pathlap/spectra/1";
        j["input"] = cfg.input_path;
        if (cfg.reduce) j["reduction"] = reduction_log_json(log);
        nlohmann::ordered_json recs = nlohmann::ordered_json::array();
        for (const auto& r : records) recs.push_back(record_json(r));
        j["records"] = std::move(recs);
        out << j.dump(2) << '\n';
    }
    return finish_with_diagnostics(diagnostics, cfg.strict, err);
}

inline int cmd_info(const run_config& cfg, std::ostream& out, std::ostream& err) {
    const weighted_digraph input = load_input(cfg);
    digraph g = input.base();
    std::vector<reduction_step> log;
    if (cfg.reduce) std::tie(g, log) = reduce_to_fixpoint(g);

    path_analyzer an(g, make_options(cfg));
    if (cfg.output == "csv") {
        out << "# pathlap info v1\n";
        out << "n,allowed_paths,omega_dim\n";
        for (int n : cfg.dims)
            out << n << ',' << an.allowed(n).size() << ',' << an.omega(n).dim() << '\n';
    } else {
        nlohmann::ordered_json j;
        j["schema"] = "pathlap/info/1";
        j["input"] = cfg.input_path;
        j["vertices"] = g.vertex_count();
        j["edges"] = g.edge_count();
        if (cfg.reduce) j["reduction"] = reduction_log_json(log);
        nlohmann::ordered_json recs = nlohmann::ordered_json::array();
        for (int n : cfg.dims) {
            nlohmann::ordered_json r;
            r["dimension"] = n;
            r["allowed_paths"] = an.allowed(n).size();
            r["omega_dim"] = an.omega(n).dim();
            recs.push_back(std::move(r));
        }
        j["records"] = std::move(recs);
        out << j.dump(2) << '\n';
    }
    (void)err;
    return 0;
}

inline int cmd_persist(const run_config& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.reduce)
        throw config_error("--reduce applies to single-graph analysis (spectra, info)");
    const weighted_digraph input = load_input(cfg);
    const sweep_result result = sweep(input, cfg.dims, cfg.keep_isolated, make_options(cfg));

    // Optionally resample the piecewise-constant curves onto a uniform grid.
    std::vector<std::pair<double, std::size_t>> rows; // (delta, report row)
    if (cfg.grid > 0) {
        const double top = result.thresholds.back();
        for (int k = 0; k < cfg.grid; ++k) {
            const double delta =
                cfg.grid == 1 ? top : top * static_cast<double>(k) / (cfg.grid - 1);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < result.thresholds.size(); ++i)
                if (result.thresholds[i] <= delta) idx = i;
            rows.push_back({delta, idx});
        }
    } else {
        for (std::size_t i = 0; i < result.thresholds.size(); ++i)
            rows.push_back({result.thresholds[i], i});
    }

    std::vector<std::string> diagnostics;
    for (const auto& per_delta : result.reports)
        for (const auto& r : per_delta)
            if (!r.nullity_matches)
                diagnostics.push_back(
                    "delta " + format_g12(r.t) + " dimension " + std::to_string(r.dimension) +
                    ": exact betti " + std::to_string(r.betti) +
                    " != eigenvalue zero count " + std::to_string(r.spec.zero_count));

    if (cfg.output == "json") {
        nlohmann::ordered_json j;
        j["schema"] = "pathlap/persist/1";
        j["input"] = cfg.input_path;
        j["keep_isolated"] = cfg.keep_isolated;
        nlohmann::ordered_json recs = nlohmann::ordered_json::array();
        for (const auto& [delta, idx] : rows) {
            for (std::size_t k = 0; k < result.dims.size(); ++k) {
                const auto& r = result.reports[idx][k];
                nlohmann::ordered_json rec =
                    record_json({r.dimension, r.omega_t_dim, r.betti, r.spec, true});
                rec["delta"] = round_g12(delta);
                recs.push_back(std::move(rec));
            }
        }
        j["records"] = std::move(recs);
        out << j.dump(2) << '\n';
    } else {
        out << "# pathlap persist v1\n";
        out << "delta,n,omega_dim,betti,fiedler,eigenvalues\n";
        for (const auto& [delta, idx] : rows) {
            for (std::size_t k = 0; k < result.dims.size(); ++k) {
                const auto& r = result.reports[idx][k];
                out << format_g12(delta) << ',';
                append_record_csv(out, {r.dimension, r.omega_t_dim, r.betti, r.spec, true});
            }
        }
    }
    return finish_with_diagnostics(diagnostics, cfg.strict, err);
}

} // namespace detail

// Entry point shared by the binary and the tests. Exit codes: 0 success,
// 1 parse/usage error, 2 resource cap exceeded, 3 internal inconsistency
// (including nullity diagnostics under --strict).
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"path homology spectra and persistent path Laplacians of digraphs"};
    app.name("pathlap");
    app.require_subcommand(1);

    run_config cfg;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input_path, "input file")->required();
        sub->add_option("--format", cfg.format, "input format (default: by extension)")
            ->check(CLI::IsMember({"edgelist", "xyz"}));
        sub->add_option("--dims", cfg.dims, "dimensions to analyze (default 0,1,2)")
            ->delimiter(',')
            ->check(CLI::Range(0, 5));
        sub->add_option("--cutoff", cfg.cutoff, "distance cutoff in Angstrom (xyz)");
        sub->add_option("--precedence", cfg.precedence_path,
                        "score table overriding the built-in electronegativities");
        sub->add_option("--output", cfg.output, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tolerance", cfg.tolerance, "absolute zero-eigenvalue tolerance");
        sub->add_option("--max-paths", cfg.max_paths,
                        "allowed-path cap (or env PATHLAP_MAX_PATHS)");
        sub->add_flag("--strict", cfg.strict, "fail on nullity diagnostics");
    };

    CLI::App* spectra = app.add_subcommand("spectra", "Laplacian spectra of one digraph");
    add_common(spectra);
    spectra->add_flag("--reduce", cfg.reduce, "apply homology-aware reductions first");

    CLI::App* persist = app.add_subcommand("persist", "sweep the distance filtration");
    add_common(persist);
    persist->add_flag("--keep-isolated", cfg.keep_isolated,
                      "keep degree-0 vertices in each snapshot");
    persist->add_option("--grid", cfg.grid, "resample onto N uniform thresholds")
        ->check(CLI::PositiveNumber);

    CLI::App* info = app.add_subcommand("info", "structural summary");
    add_common(info);
    info->add_flag("--reduce", cfg.reduce, "apply homology-aware reductions first");

    try {
        std::vector<const char*> argv;
        argv.push_back("pathlap");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 1;
    }

    // deterministic row order regardless of how --dims was written
    std::sort(cfg.dims.begin(), cfg.dims.end());
    cfg.dims.erase(std::unique(cfg.dims.begin(), cfg.dims.end()), cfg.dims.end());
    if (cfg.dims.empty()) {
        err << "error: --dims must name at least one dimension\n";
        return 1;
    }

    try {
        if (spectra->parsed()) return detail::cmd_spectra(cfg, out, err);
        if (persist->parsed()) return detail::cmd_persist(cfg, out, err);
        return detail::cmd_info(cfg, out, err);
    } catch (const resource_limit_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace pathlap::cli
