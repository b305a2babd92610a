#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cylcol/catalog.hpp"
#include "cylcol/cli.hpp"
#include "cylcol/coloring.hpp"
#include "cylcol/families.hpp"
#include "cylcol/io.hpp"
#include "cylcol/reductions.hpp"
#include "cylcol/verify.hpp"

namespace py = pybind11;
using namespace cylcol;

namespace {

HtwVariant variant_from(const std::string& name) {
    if (name == "edge") return HtwVariant::edge;
    if (name == "quasiedge") return HtwVariant::quasiedge;
    throw GraphError("variant must be edge or quasiedge, got " + name);
}

SuiteOptions options(int jobs) {
    SuiteOptions o;
    o.jobs = jobs;
    return o;
}

py::dict entry_dict(const ReportEntry& e) {
    py::dict d;
    d["instance"] = e.instance;
    d["verdict"] = to_string(e.verdict);
    d["space"] = e.space;
    d["detail"] = e.detail;
    if (e.counterexample) d["counterexample"] = py::make_tuple(e.counterexample->graph, e.counterexample->coloring);
    return d;
}

}  // namespace

PYBIND11_MODULE(_cylcol, m) {
    m.doc() = "3-coloring extension on cylinder graphs";

    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<ColoringError>(m, "ColoringError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<EmbeddedGraph>(m, "Graph")
        .def(py::init([](int n, std::vector<std::vector<int>> rotations, std::vector<Cycle> rings,
                         const std::string& surface) {
                 return build_graph(n, std::move(rotations), std::move(rings), parse_surface(surface));
             }),
             py::arg("n"), py::arg("rotations"), py::arg("rings") = std::vector<Cycle>{}, py::arg("surface") = "sphere")
        .def_static("parse", &parse_graph, py::arg("text"))
        .def_static("load", &read_graph_file, py::arg("path"))
        .def("text", &write_graph)
        .def("save", [](const EmbeddedGraph& g, const std::string& path) { write_graph_file(path, g); })
        .def_property_readonly("n", &EmbeddedGraph::n)
        .def_property_readonly("num_edges", &EmbeddedGraph::num_edges)
        .def_property_readonly("surface", [](const EmbeddedGraph& g) { return to_string(g.surface()); })
        .def_property_readonly("rotations", &EmbeddedGraph::rotations)
        .def_property_readonly("rings", &EmbeddedGraph::rings)
        .def_property_readonly("faces",
                               [](const EmbeddedGraph& g) {
                                   py::list out;
                                   for (const auto& f : g.faces())
                                       out.append(py::make_tuple(f.vertices, f.is_hole, f.ring));
                                   return out;
                               })
        .def("edges", &EmbeddedGraph::edges)
        .def("degree", &EmbeddedGraph::degree)
        .def("adjacent", &EmbeddedGraph::adjacent)
        .def("ring_vertices", &EmbeddedGraph::ring_vertices)
        .def("on_ring", &EmbeddedGraph::on_ring)
        .def("is_tame", [](const EmbeddedGraph& g) { return is_tame(g); })
        .def("dot", [](const EmbeddedGraph& g, std::optional<Coloring> c) { return export_dot(g, c ? &*c : nullptr); },
             py::arg("coloring") = py::none())
        .def("__repr__", [](const EmbeddedGraph& g) {
            std::ostringstream os;
            os << "<Graph " << to_string(g.surface()) << " n=" << g.n() << " edges=" << g.num_edges()
               << " rings=" << g.rings().size() << ">";
            return os.str();
        });

    py::class_<FamilyGraph>(m, "FamilyGraph")
        .def_readonly("graph", &FamilyGraph::graph)
        .def_property_readonly("family", [](const FamilyGraph& f) { return f.meta.family; })
        .def_property_readonly("labels", [](const FamilyGraph& f) { return f.meta.labels; })
        .def("dangerous", [](const FamilyGraph& f, int ring, const Coloring& c) { return is_dangerous(f.meta, ring, c); },
             py::arg("ring"), py::arg("coloring"))
        .def("strong", [](const FamilyGraph& f, int ring) { return f.meta.rings.at(ring).strong; });

    m.def("thomas_walls", &thomas_walls, py::arg("n"));
    m.def("reduced_thomas_walls", &reduced_thomas_walls, py::arg("n"));
    m.def("havel_thomas_walls", [](int n, const std::string& v) { return havel_thomas_walls(n, variant_from(v)); },
          py::arg("n"), py::arg("variant") = "edge");
    m.def("tent", &tent, py::arg("left") = 0, py::arg("right") = 0);
    m.def("canonical_patch", &canonical_patch);
    m.def("quadrangulated_cylinder", &quadrangulated_cylinder, py::arg("r1"), py::arg("r2"), py::arg("layers"));
    m.def("random_quad_splits", &random_quad_splits, py::arg("graph"), py::arg("count"), py::arg("seed"));
    m.def("apply_patching", &apply_patching, py::arg("family_graph"), py::arg("vertices"),
          py::arg("patches") = std::vector<EmbeddedGraph>{});
    m.def("greedy_patch_set", &greedy_patch_set, py::arg("graph"));
    m.def("is_quadrangulation", &is_quadrangulation, py::arg("graph"));

    m.def("catalog_ids", &catalog_ids);
    m.def("catalog", [](const std::string& id) { return build_catalog().at(id); }, py::arg("id"));
    m.def("shipped_catalog", []() { return basic_catalog(default_catalog_dir()); });

    m.def("parse_coloring", &parse_coloring, py::arg("text"), py::arg("n"));
    m.def("write_coloring", &write_coloring, py::arg("coloring"));
    m.def("extend", [](const EmbeddedGraph& g, const Coloring& pre) { return extend_precoloring(g, pre); },
          py::arg("graph"), py::arg("precoloring"));
    m.def("ring_precolorings", &ring_precolorings, py::arg("graph"));
    m.def("extendable_set",
          [](const EmbeddedGraph& g, int jobs) { return extendable_set(g, {}, jobs).members(g.n()); },
          py::arg("graph"), py::arg("jobs") = 1);
    m.def("winding_number", &winding_number, py::arg("graph"), py::arg("coloring"), py::arg("cycle"));
    m.def("is_consistent", &is_consistent, py::arg("graph"), py::arg("precoloring"));

    m.def("identify",
          [](const EmbeddedGraph& g, int a, int b, int face) {
              auto r = identify(g, a, b, face);
              return py::make_tuple(r.graph, r.vertex_map);
          },
          py::arg("graph"), py::arg("a"), py::arg("b"), py::arg("face"));
    m.def("is_critical", [](const EmbeddedGraph& g) { return is_critical(g); }, py::arg("graph"));

    py::class_<VerificationReport>(m, "Report")
        .def_readonly("suite", &VerificationReport::suite)
        .def_readonly("notes", &VerificationReport::notes)
        .def_property_readonly("ok", &VerificationReport::ok)
        .def_property_readonly("entries",
                               [](const VerificationReport& r) {
                                   py::list out;
                                   for (const auto& e : r.entries) out.append(entry_dict(e));
                                   return out;
                               })
        .def("count", [](const VerificationReport& r, const std::string& v) {
            for (auto x : {Verdict::confirmed, Verdict::refuted, Verdict::skipped})
                if (to_string(x) == v) return r.count(x);
            throw GraphError("unknown verdict " + v);
        })
        .def("text", &VerificationReport::text, py::arg("timing") = false);

    m.def("suite_names", &suite_names);
    m.def("verify_col_tw",
          [](int n_max, bool all_framings, bool patching, int jobs) {
              return verify_col_tw(n_max, all_framings ? FramingSet::all : FramingSet::subset, patching, options(jobs));
          },
          py::arg("n_max") = 6, py::arg("all_framings") = true, py::arg("patching") = false, py::arg("jobs") = 1);
    m.def("verify_col_htw",
          [](int n_max, const std::vector<std::string>& variants, int jobs) {
              std::vector<HtwVariant> vs;
              for (const auto& v : variants) vs.push_back(variant_from(v));
              return verify_col_htw(n_max, vs, options(jobs));
          },
          py::arg("n_max") = 4, py::arg("variants") = std::vector<std::string>{"edge", "quasiedge"},
          py::arg("jobs") = 1);
    m.def("verify_tent", [](int depth, int jobs) { return verify_tent(depth, options(jobs)); },
          py::arg("depth_max") = 3, py::arg("jobs") = 1);
    m.def("verify_reductions",
          [](int steps, std::uint64_t seed, int jobs) { return verify_reductions(steps, seed, options(jobs)); },
          py::arg("steps") = 100, py::arg("seed") = 1, py::arg("jobs") = 1);
    m.def("verify_criticality",
          [](std::uint64_t seed, int jobs) { return verify_criticality(seed, "", options(jobs)); },
          py::arg("seed") = 1, py::arg("jobs") = 1);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code;
              {
                  py::gil_scoped_release release;
                  code = run_cli(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
