#include <filesystem>

#include "doctest.h"
#include "oracle.hpp"

#include "cylcol/families.hpp"
#include "cylcol/io.hpp"
#include "cylcol/verify.hpp"

using namespace cylcol;

namespace {

// Adds the diagonal w0-w2 inside a face, or nothing if it already exists.
std::optional<EmbeddedGraph> with_chord(const EmbeddedGraph& g, const std::vector<int>& face) {
    if (face.size() < 4 || g.adjacent(face[0], face[2])) return std::nullopt;
    auto rot = g.rotations();
    auto insert_after = [&](int v, int anchor, int x) {
        auto& r = rot[v];
        r.insert(std::find(r.begin(), r.end(), anchor) + 1, x);
    };
    insert_after(face[0], face[1], face[2]);
    insert_after(face[2], face[3], face[0]);
    return build_graph(g.n(), rot, g.rings(), g.surface());
}

// Every mutant missing one non-ring edge.
std::vector<FamilyGraph> deletion_mutants(const FamilyGraph& fg) {
    std::vector<FamilyGraph> out;
    std::vector<int> all(fg.graph.n());
    for (int v = 0; v < fg.graph.n(); ++v) all[v] = v;
    for (auto e : fg.graph.edges()) {
        if (fg.graph.is_ring_edge(e.first, e.second)) continue;
        out.push_back({induced_restriction(fg.graph, all, {e}, fg.graph.rings()), fg.meta});
    }
    return out;
}

// Every mutant with one extra chord, meta carried over unchanged.
std::vector<FamilyGraph> chord_mutants(const FamilyGraph& fg) {
    std::vector<FamilyGraph> out;
    for (const auto& f : fg.graph.faces()) {
        if (f.is_hole) continue;
        if (auto m = with_chord(fg.graph, f.vertices)) out.push_back({*m, fg.meta});
    }
    return out;
}

// A counterexample must replay: its verdict from the solver contradicts what was checked.
bool extends_replayed(const Counterexample& ce) {
    auto g = parse_graph(ce.graph);
    auto c = parse_coloring(ce.coloring, g.n());
    return oracle::extends(g, c);
}

SuiteOptions with_jobs(int jobs) {
    SuiteOptions o;
    o.jobs = jobs;
    return o;
}

}  // namespace

TEST_CASE("suite reports do not depend on the thread count") {
    std::vector<std::function<VerificationReport(const SuiteOptions&)>> runs = {
        [](const SuiteOptions& o) { return verify_col_tw(3, FramingSet::subset, true, o); },
        [](const SuiteOptions& o) { return verify_col_htw(2, {HtwVariant::edge, HtwVariant::quasiedge}, o); },
        [](const SuiteOptions& o) { return verify_tent(2, o); },
        [](const SuiteOptions& o) { return verify_patch_equiv(shipped_patches(), o); },
        [](const SuiteOptions& o) { return verify_cylflow(default_cylflow_instances(), o); },
        [](const SuiteOptions& o) { return verify_col44(default_col44_instances(), o); },
        [](const SuiteOptions& o) { return verify_reductions(12, 5, o); },
        [](const SuiteOptions& o) { return verify_criticality(9, "", o); },
        [](const SuiteOptions& o) { return verify_crtri_families(2, o); },
        [](const SuiteOptions& o) {
            ChaincolOptions c;
            c.samples = 300;
            c.cross_checks = 4;
            c.max_length = 8;
            c.seed = 3;
            return verify_chaincol(c, o);
        },
    };
    for (size_t i = 0; i < runs.size(); ++i) {
        CAPTURE(i);
        auto one = runs[i](with_jobs(1));
        auto two = runs[i](with_jobs(2));
        CHECK(one.text(false) == two.text(false));
        CHECK(one.ok());
        CHECK_FALSE(one.entries.empty());
    }
}

TEST_CASE("report text carries one record per entry and a summary") {
    auto r = verify_tent(1);
    auto text = r.text(false);
    CHECK(text.find("suite=tent instance=depth=0,0 verdict=confirmed space=18 detail=\"extendable=12\"") !=
          std::string::npos);
    CHECK(text.find("summary suite=tent instances=4 confirmed=4 refuted=0 skipped=0 space=72") != std::string::npos);
    CHECK(text.find("millis=") == std::string::npos);
    CHECK(r.text(true).find("millis=") != std::string::npos);
    CHECK(r.count(Verdict::confirmed) == 4);
    CHECK(r.total_space() == 72);
}

TEST_CASE("a wrong characterization is refuted with a replayable counterexample") {
    auto g = tent(0, 0).graph;
    auto e = check_characterization("t", g, [](const Coloring&) { return Expect::extends; }, {});
    REQUIRE(e.verdict == Verdict::refuted);
    REQUIRE(e.counterexample.has_value());
    CHECK_FALSE(extends_replayed(*e.counterexample));

    auto f = check_characterization("t", g, [](const Coloring&) { return Expect::fails; }, {});
    REQUIRE(f.verdict == Verdict::refuted);
    CHECK(extends_replayed(*f.counterexample));

    auto either = check_characterization("t", g, [](const Coloring&) { return Expect::either; }, {});
    CHECK(either.verdict == Verdict::confirmed);
}

TEST_CASE("a missing edge in a Havel-Thomas-Walls graph is caught") {
    for (auto v : {HtwVariant::edge, HtwVariant::quasiedge}) {
        auto fg = havel_thomas_walls(2, v);
        CHECK(check_col_htw_instance("base", fg).verdict == Verdict::confirmed);
        int refuted = 0;
        for (const auto& m : deletion_mutants(fg)) {
            auto e = check_col_htw_instance("mutant", m);
            if (e.verdict != Verdict::refuted) continue;
            ++refuted;
            REQUIRE(e.counterexample.has_value());
            auto g = parse_graph(e.counterexample->graph);
            auto c = parse_coloring(e.counterexample->coloring, g.n());
            bool dangerous = is_dangerous(fg.meta, 0, c);
            CHECK(oracle::extends(g, c) == dangerous);
        }
        CHECK(refuted > 0);
    }
}

TEST_CASE("an extra edge in a reduced Thomas-Walls graph is caught") {
    auto fg = reduced_thomas_walls(4);
    CHECK(check_col_tw_instance("base", fg, true).verdict == Verdict::confirmed);
    int refuted = 0;
    for (const auto& m : chord_mutants(fg)) refuted += check_col_tw_instance("m", m, true).verdict == Verdict::refuted;
    CHECK(refuted > 0);
}

TEST_CASE("small reduced graphs record converse failures without refuting") {
    auto e = check_col_tw_instance("n2", reduced_thomas_walls(2), false);
    CHECK(e.verdict == Verdict::confirmed);
    CHECK(e.detail.rfind("converse-failures=", 0) == 0);
}

TEST_CASE("inputs outside a suite's scope are skipped, not refuted") {
    auto hexagon = from_unoriented_faces(6, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}}, {0}, Surface::disk);
    auto p = verify_patch_equiv({hexagon});
    CHECK(p.count(Verdict::skipped) == 1);

    auto c = verify_cylflow({{"tent", tent(0, 0).graph}, {"big", quadrangulated_cylinder(4, 4, 4)}});
    CHECK(c.count(Verdict::skipped) == 2);

    auto near = verify_col44({{"close", quadrangulated_cylinder(3, 3, 2)}});
    CHECK(near.count(Verdict::skipped) == 1);

    auto q = verify_col33({{"four", quadrangulated_cylinder(4, 4, 3)}});
    CHECK(q.count(Verdict::skipped) == 1);

    auto t = check_tent_instance("not", FamilyGraph{canonical_patch(), {}});
    CHECK(t.verdict == Verdict::skipped);
}

TEST_CASE("tight solver budgets skip instead of guessing") {
    SuiteOptions o;
    o.limits.max_nodes = 1;
    auto r = verify_col_htw(2, {HtwVariant::edge}, o);
    CHECK(r.count(Verdict::skipped) >= 1);
    CHECK(r.ok());
    o.limits = {};
    o.limits.max_vertices = 5;
    CHECK(verify_tent(0, o).count(Verdict::skipped) == 1);
}

TEST_CASE("counterexamples are written as graph and coloring files") {
    VerificationReport r;
    r.suite = "demo";
    auto g = tent(0, 0).graph;
    auto e = check_characterization("x", g, [](const Coloring&) { return Expect::extends; }, {});
    e.instance = "x";
    r.entries.push_back(e);
    auto dir = std::filesystem::temp_directory_path() / "cylcol_ce";
    std::filesystem::remove_all(dir);
    auto paths = r.write_counterexamples(dir.string());
    REQUIRE(paths.size() == 2);
    auto back = read_graph_file(paths[0]);
    auto c = read_coloring_file(paths[1], back.n());
    CHECK_FALSE(oracle::extends(back, c));
    std::filesystem::remove_all(dir);
}

TEST_CASE("pendant mutants add one vertex of degree one") {
    auto g = tent(1, 1).graph;
    auto m = add_pendant_edge(g, 4);
    CHECK(m.n() == g.n() + 1);
    CHECK(m.num_edges() == g.num_edges() + 1);
    CHECK(m.degree(g.n()) == 1);
    CHECK(add_pendant_edge(g, 4).rotations() == m.rotations());
}

TEST_CASE("patch budgets respect the vertex cap") {
    auto fg = reduced_thomas_walls(6);
    auto S = budget_patch_set(fg, 4);
    CHECK(fg.graph.n() + 3 * static_cast<int>(S.size()) + 4 <= 40);
    auto T = budget_patch_set(fg, 0, 40, true, 9);
    for (int v : T)
        for (const auto& t : triangles(fg.graph)) CHECK(std::find(t.begin(), t.end(), v) == t.end());
}

TEST_CASE("eleven suites are known") {
    CHECK(suite_names().size() == 11);
    CHECK(std::find(suite_names().begin(), suite_names().end(), "chaincol") != suite_names().end());
}
