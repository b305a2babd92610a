#include "cylcol/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cylcol/catalog.hpp"
#include "cylcol/families.hpp"
#include "cylcol/io.hpp"
#include "cylcol/reductions.hpp"
#include "cylcol/verify.hpp"

namespace cylcol {

std::string export_dot(const EmbeddedGraph& g, const Coloring* coloring) {
    static const char* fill[] = {"#e41a1c", "#377eb8", "#4daf4a"};
    std::ostringstream os;
    os << "graph G {\n  // surface " << to_string(g.surface()) << "\n";
    for (size_t r = 0; r < g.rings().size(); ++r) {
        os << "  // ring " << r << ":";
        for (int v : g.rings()[r]) os << " " << v;
        os << "\n";
    }
    for (int v = 0; v < g.n(); ++v) {
        os << "  " << v << " [";
        std::string label = std::to_string(v);
        if (coloring && v < static_cast<int>(coloring->size()) && (*coloring)[v] >= 0) {
            int c = (*coloring)[v];
            label += ":" + std::to_string(c);
            os << "style=filled, fillcolor=\"" << fill[c % 3] << "\", ";
        }
        os << "label=\"" << label << "\"";
        if (g.on_ring(v)) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (auto [u, v] : g.edges()) {
        os << "  " << u << " -- " << v;
        if (g.is_ring_edge(u, v)) os << " [penwidth=2]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + s);
        }
    }
    return out;
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<FramingChoice> parse_framing(const std::string& code, int rings) {
    // per ring two letters: y/n for a new y' then a new w', rings separated by '.'
    std::vector<FramingChoice> out;
    std::istringstream in(code);
    std::string part;
    while (std::getline(in, part, '.')) {
        if (part.size() != 2 || (part[0] != 'y' && part[0] != 'n') || (part[1] != 'y' && part[1] != 'n'))
            throw UsageError("framing code must look like yn or yn.ny");
        out.push_back({part[0] == 'y', part[1] == 'y'});
    }
    if (static_cast<int>(out.size()) != rings)
        throw UsageError("framing code needs " + std::to_string(rings) + " part(s)");
    return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

int face_with(const EmbeddedGraph& g, int a, int b, int len) {
    for (size_t f = 0; f < g.faces().size(); ++f) {
        const auto& w = g.faces()[f].vertices;
        if (g.faces()[f].is_hole || static_cast<int>(w.size()) != len) continue;
        if (std::count(w.begin(), w.end(), a) && std::count(w.begin(), w.end(), b)) return static_cast<int>(f);
    }
    return -1;
}

std::string map_text(const std::vector<int>& map) {
    std::ostringstream os;
    os << "# original -> reduced\n";
    for (size_t v = 0; v < map.size(); ++v) os << "map " << v << " " << map[v] << "\n";
    return os.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Precoloring extension toolkit for cylinder graphs", "cylcol"};
    app.require_subcommand(1);

    // gen
    std::string family, output, frame, variant = "edge", catalog_id, spec_file, subdivide = "none";
    int n = 1, left = 0, right = 0, r = 4, layers = 1, splits = 0;
    bool patch = false;
    std::optional<std::uint64_t> seed;
    auto* gen = app.add_subcommand("gen", "Generate a graph family member");
    gen->add_option("family", family,
                    "thomas-walls, reduced-thomas-walls, havel-thomas-walls, tent, patch, quad-cylinder, near-33, "
                    "catalog, chain")
        ->required();
    gen->add_option("--n", n, "Family index")->check(CLI::Range(1, 64));
    gen->add_option("--variant", variant, "edge|quasiedge for havel-thomas-walls, canonical|hex for patch");
    gen->add_option("--frame", frame, "Framing code per ring, e.g. yn or nn.yy");
    gen->add_flag("--patch", patch, "Patch a greedy independent set of degree-3 vertices");
    gen->add_option("--left", left, "Tent depth on the v1v2 side")->check(CLI::NonNegativeNumber);
    gen->add_option("--right", right, "Tent depth on the v3v4 side")->check(CLI::NonNegativeNumber);
    gen->add_option("--r", r, "Ring length of quad-cylinder")->check(CLI::Range(3, 64));
    gen->add_option("--layers", layers, "Number of quadrangle layers")->check(CLI::Range(1, 256));
    gen->add_option("--splits", splits, "Random 4-face splits (needs --seed)")->check(CLI::NonNegativeNumber);
    gen->add_option("--subdivide", subdivide, "near-33: none|first|second|both");
    gen->add_option("--id", catalog_id, "Catalog id (catalog family)");
    gen->add_option("--spec", spec_file, "Chain specification file (chain family)");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("-o,--output", output, "Output file (default stdout)");

    // solve
    std::string graph_file, precolor_file, coloring_file, cycle_list;
    auto* solve_cmd = app.add_subcommand("solve", "Extend a precoloring or print UNSAT");
    solve_cmd->add_option("graph", graph_file, "Graph file")->required();
    solve_cmd->add_option("--precolor", precolor_file, "Coloring file fixing some vertices");
    solve_cmd->add_option("-o,--output", output, "Write the coloring here");

    int jobs = 1;
    auto* ext_cmd = app.add_subcommand("extendset", "List the extendable ring precolorings");
    ext_cmd->add_option("graph", graph_file, "Graph file")->required();
    ext_cmd->add_option("-o,--output", output, "Output file");
    ext_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));

    auto* wind_cmd = app.add_subcommand("winding", "Winding number of a coloring on a cycle");
    wind_cmd->add_option("graph", graph_file, "Graph file")->required();
    wind_cmd->add_option("--coloring", coloring_file, "Total coloring file")->required();
    wind_cmd->add_option("--cycle", cycle_list, "Comma separated cycle, e.g. 0,1,2")->required();

    std::string op, vertex_list, triangle_list, map_file;
    int face = -1;
    auto* red_cmd = app.add_subcommand("reduce", "Apply a pinch, identification or collapse");
    red_cmd->add_option("graph", graph_file, "Graph file")->required();
    red_cmd->add_option("--op", op, "identify|collapse|pinch")->required()->check(
        CLI::IsMember({"identify", "collapse", "pinch"}));
    red_cmd->add_option("--vertices", vertex_list, "Two vertices a,b (identify, pinch)");
    red_cmd->add_option("--face", face, "Face index (default: a face holding both vertices)");
    red_cmd->add_option("--triangles", triangle_list,
                        "x,y1,y2,x,z1,z2 (collapse; default: the first touching pair)");
    red_cmd->add_option("-o,--output", output, "Output graph file");
    red_cmd->add_option("--map", map_file, "Write the vertex map here");

    auto* dec_cmd = app.add_subcommand("decompose", "Split a cylinder graph into a chain");
    dec_cmd->add_option("graph", graph_file, "Graph file")->required();

    // verify
    std::string suite, framings = "all", patching = "off", variants = "edge,quasiedge", subset, catalog_dir,
                        cex_dir;
    int n_max = -1, depth_max = 3, chain_n = 7, samples = 10000, min_len = 7, max_len = 10, cross = 50, steps = 100;
    std::vector<std::string> instance_files;
    bool no_timing = false;
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    ver->add_option("--n-max", n_max, "Largest family index")->check(CLI::Range(1, 8));
    ver->add_option("--framings", framings, "all|subset")->check(CLI::IsMember({"all", "subset"}));
    ver->add_option("--patching", patching, "on|off")->check(CLI::IsMember({"on", "off"}));
    ver->add_option("--variants", variants, "edge,quasiedge");
    ver->add_option("--depth-max", depth_max, "Largest tent depth")->check(CLI::Range(0, 8));
    ver->add_option("--graph", instance_files, "Instance files instead of the built-in set");
    ver->add_option("--n", chain_n, "Exhaustive chain length")->check(CLI::Range(7, 12));
    ver->add_option("--subset", subset, "Catalog ids for the exhaustive chains");
    ver->add_option("--samples", samples, "Random chains")->check(CLI::NonNegativeNumber);
    ver->add_option("--min-length", min_len, "Shortest random chain")->check(CLI::Range(1, 64));
    ver->add_option("--max-length", max_len, "Longest random chain")->check(CLI::Range(1, 64));
    ver->add_option("--cross-checks", cross, "Random chains also solved directly")->check(CLI::NonNegativeNumber);
    ver->add_option("--steps", steps, "Reduction steps")->check(CLI::Range(1, 100000));
    ver->add_option("--catalog", catalog_dir, "Catalog directory");
    ver->add_option("--seed", seed, "Random seed");
    ver->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
    ver->add_flag("--no-timing", no_timing, "Omit millis from the records");
    ver->add_option("--counterexamples", cex_dir, "Write refuting graphs and colorings here");

    auto* exp_cmd = app.add_subcommand("export", "Graphviz drawing of a graph");
    exp_cmd->add_option("graph", graph_file, "Graph file")->required();
    exp_cmd->add_option("--coloring", coloring_file, "Coloring to show as labels");
    exp_cmd->add_option("-o,--output", output, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return exit_usage;
    }

    auto need_seed = [&](const char* what) -> std::uint64_t {
        if (!seed) throw UsageError(std::string(what) + " is randomized and needs --seed");
        return *seed;
    };

    try {
        if (gen->parsed()) {
            EmbeddedGraph g;
            auto finish = [&](FamilyGraph fg, int rings) {
                if (patch) fg = apply_patching(fg, greedy_patch_set(fg.graph));
                if (!frame.empty()) fg = apply_framing(fg, parse_framing(frame, rings));
                return fg.graph;
            };
            if (family == "thomas-walls") {
                g = thomas_walls(n).graph;
            } else if (family == "reduced-thomas-walls") {
                g = finish(reduced_thomas_walls(n), 2);
            } else if (family == "havel-thomas-walls") {
                if (variant != "edge" && variant != "quasiedge") throw UsageError("variant must be edge or quasiedge");
                g = finish(havel_thomas_walls(n, variant == "edge" ? HtwVariant::edge : HtwVariant::quasiedge), 1);
            } else if (family == "tent") {
                g = tent(left, right).graph;
            } else if (family == "patch") {
                if (variant == "edge" || variant == "canonical") g = canonical_patch();
                else if (variant == "hex") g = hex_layer_patch();
                else throw UsageError("patch variant must be canonical or hex");
            } else if (family == "quad-cylinder") {
                g = quadrangulated_cylinder(r, r, layers);
            } else if (family == "near-33") {
                auto base = quadrangulated_cylinder(3, 3, layers);
                int top = 3 * layers;
                std::vector<Edge> sub;
                if (subdivide == "first" || subdivide == "both") sub.push_back({0, 1});
                if (subdivide == "second" || subdivide == "both") sub.push_back({top, top + 1});
                if (subdivide != "none" && sub.empty()) throw UsageError("subdivide must be none, first, second or both");
                g = near_33_quadrangulation(base, sub).graph;
            } else if (family == "catalog") {
                auto cat = build_catalog();
                auto it = cat.find(catalog_id);
                if (it == cat.end()) throw UsageError("unknown catalog id '" + catalog_id + "'");
                g = it->second;
            } else if (family == "chain") {
                if (spec_file.empty()) throw UsageError("chain needs --spec");
                g = build_chain(load_chain_spec(spec_file)).graph;
            } else {
                throw UsageError("unknown family '" + family + "'");
            }
            if (splits > 0) g = random_quad_splits(g, splits, need_seed("--splits"));
            emit(write_graph(g), output, out);
            return exit_ok;
        }

        if (solve_cmd->parsed()) {
            auto g = read_graph_file(graph_file);
            Coloring pre = precolor_file.empty() ? Coloring(g.n(), -1) : read_coloring_file(precolor_file, g.n());
            auto res = extend_precoloring(g, pre);
            if (!res) {
                out << "UNSAT\n";
                return exit_negative;
            }
            emit(write_coloring(*res), output, out);
            return exit_ok;
        }

        if (ext_cmd->parsed()) {
            auto g = read_graph_file(graph_file);
            auto set = extendable_set(g, {}, jobs);
            std::ostringstream os;
            os << "# vertices";
            for (int v : set.vertices()) os << " " << v;
            os << "\n# extendable " << set.size() << " of " << ring_precolorings(g).size() << "\n";
            for (const auto& c : set.members(g.n())) {
                for (int v : set.vertices()) os << c[v];
                os << "\n";
            }
            emit(os.str(), output, out);
            return exit_ok;
        }

        if (wind_cmd->parsed()) {
            auto g = read_graph_file(graph_file);
            auto phi = read_coloring_file(coloring_file, g.n());
            out << winding_number(g, phi, parse_int_list(cycle_list)) << "\n";
            return exit_ok;
        }

        if (red_cmd->parsed()) {
            auto g = read_graph_file(graph_file);
            Reduced res;
            if (op == "collapse") {
                std::array<int, 3> ty{}, tz{};
                if (triangle_list.empty()) {
                    auto pairs = touching_triangles(g);
                    if (pairs.empty()) {
                        err << "no touching triangles\n";
                        return exit_negative;
                    }
                    std::tie(ty, tz) = pairs.front();
                } else {
                    auto t = parse_int_list(triangle_list);
                    if (t.size() != 6) throw UsageError("--triangles needs six vertices");
                    ty = {t[0], t[1], t[2]};
                    tz = {t[3], t[4], t[5]};
                }
                res = collapse_triangles(g, ty, tz);
            } else {
                auto v = parse_int_list(vertex_list);
                if (v.size() != 2) throw UsageError("--vertices needs two vertices");
                for (int x : v)
                    if (x < 0 || x >= g.n()) throw UsageError("vertex out of range");
                int f = face >= 0 ? face : face_with(g, v[0], v[1], op == "identify" ? 4 : 0);
                if (f < 0 && op == "pinch")
                    for (size_t i = 0; i < g.faces().size() && f < 0; ++i) {
                        const auto& w = g.faces()[i].vertices;
                        if (std::count(w.begin(), w.end(), v[0]) && std::count(w.begin(), w.end(), v[1]))
                            f = static_cast<int>(i);
                    }
                if (f < 0) throw UsageError("no face holds both vertices");
                res = op == "identify" ? identify(g, v[0], v[1], f) : pinch(g, v[0], v[1], f);
            }
            emit(write_graph(res.graph), output, out);
            if (!map_file.empty()) write_text_file(map_file, map_text(res.vertex_map));
            return exit_ok;
        }

        if (dec_cmd->parsed()) {
            auto g = read_graph_file(graph_file);
            auto ch = decompose_chain(g);
            if (!ch) {
                out << "not a chain\n";
                return exit_negative;
            }
            out << "pieces " << ch->pieces.size() << "\n";
            for (size_t i = 0; i < ch->cutting_cycles.size(); ++i) {
                out << "cycle " << i << ":";
                for (int v : ch->cutting_cycles[i]) out << " " << v;
                out << "\n";
            }
            for (size_t i = 0; i < ch->pieces.size(); ++i)
                out << "piece " << i + 1 << " vertices " << ch->pieces[i].n()
                    << (ch->quad_flags[i] ? " quadrangulated" : "") << "\n";
            out << "special";
            for (int v : special_vertices(*ch)) out << " " << v;
            out << "\n";
            return exit_ok;
        }

        if (ver->parsed()) {
            SuiteOptions opt;
            opt.jobs = jobs;
            auto load = [&](std::vector<std::pair<std::string, EmbeddedGraph>> fallback) {
                if (instance_files.empty()) return fallback;
                std::vector<std::pair<std::string, EmbeddedGraph>> mine;
                for (const auto& f : instance_files) mine.push_back({f, read_graph_file(f)});
                return mine;
            };
            VerificationReport rep;
            if (suite == "col-tw") {
                rep = verify_col_tw(n_max < 0 ? 6 : n_max, framings == "all" ? FramingSet::all : FramingSet::subset,
                                    patching == "on", opt);
            } else if (suite == "col-htw") {
                std::vector<HtwVariant> vs;
                for (const auto& v : split_names(variants)) {
                    if (v == "edge") vs.push_back(HtwVariant::edge);
                    else if (v == "quasiedge") vs.push_back(HtwVariant::quasiedge);
                    else throw UsageError("unknown variant '" + v + "'");
                }
                rep = verify_col_htw(n_max < 0 ? 4 : n_max, vs, opt);
            } else if (suite == "tent") {
                rep = verify_tent(depth_max, opt);
            } else if (suite == "patch-equiv") {
                std::vector<EmbeddedGraph> ps;
                for (const auto& f : instance_files) ps.push_back(read_graph_file(f));
                rep = verify_patch_equiv(ps.empty() ? shipped_patches() : ps, opt);
            } else if (suite == "cylflow") {
                rep = verify_cylflow(load(default_cylflow_instances()), opt);
            } else if (suite == "col44") {
                rep = verify_col44(load(default_col44_instances()), opt);
            } else if (suite == "col33") {
                rep = verify_col33(load(default_col33_instances()), opt);
            } else if (suite == "chaincol") {
                ChaincolOptions c;
                c.n = chain_n;
                if (!subset.empty()) c.subset = split_names(subset);
                c.samples = samples;
                c.min_length = min_len;
                c.max_length = max_len;
                if (min_len > max_len) throw UsageError("--min-length exceeds --max-length");
                c.cross_checks = cross;
                c.seed = need_seed("chaincol");
                c.catalog_dir = catalog_dir;
                rep = verify_chaincol(c, opt);
            } else if (suite == "reductions") {
                rep = verify_reductions(steps, need_seed("reductions"), opt);
            } else if (suite == "criticality") {
                rep = verify_criticality(need_seed("criticality"), catalog_dir, opt);
            } else if (suite == "crtri") {
                rep = verify_crtri_families(n_max < 0 ? 3 : n_max, opt);
            }
            out << rep.text(!no_timing);
            if (!cex_dir.empty())
                for (const auto& p : rep.write_counterexamples(cex_dir)) err << "wrote " << p << "\n";
            return rep.ok() ? exit_ok : exit_negative;
        }

        if (exp_cmd->parsed()) {
            auto g = read_graph_file(graph_file);
            std::optional<Coloring> c;
            if (!coloring_file.empty()) c = read_coloring_file(coloring_file, g.n());
            emit(export_dot(g, c ? &*c : nullptr), output, out);
            return exit_ok;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const GraphError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ColoringError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv = {"cylcol"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cylcol
