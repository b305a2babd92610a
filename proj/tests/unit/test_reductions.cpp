#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "cylcol/catalog.hpp"
#include "cylcol/families.hpp"
#include "cylcol/reductions.hpp"
#include "cylcol/verify.hpp"

using namespace cylcol;

namespace {

const std::map<std::string, EmbeddedGraph>& catalog() {
    static const auto cat = build_catalog();
    return cat;
}

ChainSpec spec_of(const std::vector<std::string>& ids) {
    ChainSpec spec;
    for (size_t i = 0; i < ids.size(); ++i) {
        spec.pieces.push_back(catalog().at(ids[i]));
        if (i) spec.gluings.push_back({spec.pieces[i - 1].rings()[1], spec.pieces[i].rings()[0]});
    }
    return spec;
}

// Every extendable precoloring of h, read back through the map, extends in g.
bool dominates_by_brute_force(const EmbeddedGraph& h, const EmbeddedGraph& g, const std::vector<int>& map) {
    for (const auto& psi_g : oracle::ring_colorings(g)) {
        Coloring psi_h(h.n(), -1);
        bool clash = false;
        for (int v : g.ring_vertices()) {
            int w = map[v];
            if (psi_h[w] >= 0 && psi_h[w] != psi_g[v]) clash = true;
            psi_h[w] = psi_g[v];
        }
        if (clash) continue;
        if (oracle::extends(h, psi_h) && !oracle::extends(g, psi_g)) return false;
    }
    return true;
}

struct FaceChoice {
    int face;
    int a;
    int b;
};

std::vector<FaceChoice> identifiable(const EmbeddedGraph& g) {
    std::vector<FaceChoice> out;
    for (size_t f = 0; f < g.faces().size(); ++f) {
        const auto& w = g.faces()[f].vertices;
        if (g.faces()[f].is_hole || w.size() != 4) continue;
        for (int s = 0; s < 2; ++s) {
            int a = w[s], b = w[s + 2];
            if ((g.on_ring(a) && g.on_ring(b)) || g.adjacent(a, b)) continue;
            out.push_back({static_cast<int>(f), a, b});
        }
    }
    return out;
}

// Tent with an extra degree-2 vertex hanging between two interior-adjacent ring vertices.
EmbeddedGraph tent_with_redundant_path() {
    auto t = tent(1, 0).graph;
    for (size_t f = 0; f < t.faces().size(); ++f) {
        const auto& w = t.faces()[f].vertices;
        if (t.faces()[f].is_hole || w.size() != 4) continue;
        return split_quad_face(t, static_cast<int>(f), 0);
    }
    FAIL("tent has no 4-face");
    return t;
}

}  // namespace

TEST_CASE("identification drops a vertex and is dominated") {
    std::vector<EmbeddedGraph> gs = {quadrangulated_cylinder(3, 3, 2), quadrangulated_cylinder(4, 4, 2),
                                     random_quad_splits(quadrangulated_cylinder(3, 3, 2), 2, 3), tent(1, 1).graph};
    int checked = 0;
    for (const auto& g : gs)
        for (const auto& c : identifiable(g)) {
            Reduced r;
            try {
                r = identify(g, c.a, c.b, c.face);
            } catch (const GraphError&) {
                // merging into a ring can leave a ring that no longer bounds a face
                continue;
            }
            CHECK(r.graph.n() == g.n() - 1);
            CHECK(r.graph.num_edges() <= g.num_edges() - 1);
            CHECK(r.vertex_map[c.a] == r.vertex_map[c.b]);
            CHECK(dominates_by_brute_force(r.graph, g, r.vertex_map));
            CHECK(dominates(r.graph, g, r.vertex_map));
            ++checked;
        }
    CHECK(checked > 10);
}

TEST_CASE("identification rejects bad input") {
    auto g = quadrangulated_cylinder(4, 4, 2);
    int face = -1;
    for (size_t f = 0; f < g.faces().size(); ++f)
        if (!g.faces()[f].is_hole) face = static_cast<int>(f);
    const auto& w = g.faces()[face].vertices;
    CHECK_THROWS_AS(identify(g, w[0], w[1], face), GraphError);
    int hole = g.hole_face(0);
    CHECK_THROWS_AS(identify(g, g.rings()[0][0], g.rings()[0][2], hole), GraphError);
}

TEST_CASE("domination is reflexive and detects a missing extension") {
    auto g = tent(0, 0).graph;
    std::vector<int> id(g.n());
    for (int v = 0; v < g.n(); ++v) id[v] = v;
    CHECK(dominates(g, g, id));
    // the bare 4-cycle extends everything, the tent does not
    auto sq = build_graph(4, {{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {{0, 1, 2, 3}}, Surface::disk);
    std::vector<int> to_sq = {0, 1, 2, 3, -1, -1};
    CHECK_FALSE(dominates(sq, g, to_sq));
    CHECK(dominates_by_brute_force(sq, g, to_sq) == false);
}

TEST_CASE("collapsing touching triangles after identification is dominated") {
    int collapsed = 0;
    for (const auto& ids : std::vector<std::vector<std::string>>{{"x7", "x7"}, {"x7", "q5"}, {"q5", "x7"}}) {
        auto g = build_chain(spec_of(ids)).graph;
        if (g.n() > 14) continue;
        for (const auto& c : identifiable(g)) {
            Reduced r;
            try {
                r = identify(g, c.a, c.b, c.face);
            } catch (const GraphError&) {
                continue;
            }
            auto pairs = touching_triangles(r.graph);
            if (pairs.empty()) continue;
            Reduced next;
            try {
                next = collapse_triangles(r.graph, pairs[0].first, pairs[0].second);
            } catch (const GraphError&) {
                continue;
            }
            std::vector<int> map(g.n());
            for (int v = 0; v < g.n(); ++v) map[v] = next.vertex_map[r.vertex_map[v]];
            CHECK(next.graph.n() < r.graph.n());
            CHECK(dominates_by_brute_force(next.graph, g, map));
            ++collapsed;
        }
    }
    MESSAGE("collapses checked: " << collapsed);
}

TEST_CASE("pinching merges two face vertices") {
    auto g = quadrangulated_cylinder(4, 4, 2);
    for (size_t f = 0; f < g.faces().size(); ++f) {
        const auto& w = g.faces()[f].vertices;
        if (g.faces()[f].is_hole) continue;
        auto r = pinch(g, w[0], w[2], static_cast<int>(f));
        CHECK(r.graph.n() == g.n() - 1);
        CHECK(r.vertex_map[w[0]] == r.vertex_map[w[2]]);
        break;
    }
}

TEST_CASE("criticality agrees with exhaustive deletion") {
    std::vector<std::pair<std::string, EmbeddedGraph>> gs = {
        {"tent00", tent(0, 0).graph}, {"tent10", tent(1, 0).graph}, {"patch", canonical_patch()},
        {"redundant", tent_with_redundant_path()}};
    for (const auto& [id, g] : catalog())
        if (g.n() <= 12 && !g.equals_rings()) gs.push_back({id, g});
    for (const auto& [id, g] : gs) {
        CAPTURE(id);
        CHECK(is_critical(g) == oracle::critical(g));
        auto m = add_pendant_edge(g, 17);
        CHECK(m.n() == g.n() + 1);
        CHECK_FALSE(is_critical(m));
    }
    CHECK(is_critical(tent(0, 0).graph));
    CHECK_THROWS_AS(is_critical(reduced_thomas_walls(1).graph), GraphError);
}

TEST_CASE("critical graphs have no interior vertex of degree below three") {
    for (const auto& [id, g] : catalog()) {
        if (g.equals_rings() || !is_critical(g)) continue;
        for (int v = 0; v < g.n(); ++v)
            if (!g.on_ring(v)) CHECK(g.degree(v) >= 3);
    }
}

TEST_CASE("maximal critical subgraph keeps the extendable set") {
    auto g = tent_with_redundant_path();
    CHECK_FALSE(is_critical(g));
    auto h = maximal_critical_subgraph(g);
    CHECK(h.n() <= g.n());
    CHECK(h.num_edges() < g.num_edges());
    CHECK(oracle::extendable(h) == oracle::extendable(g));
    CHECK(is_critical(h));
    auto again = maximal_critical_subgraph(h);
    CHECK(again.rotations() == h.rotations());

    auto t = tent(0, 0).graph;
    CHECK(maximal_critical_subgraph(t).rotations() == t.rotations());
    CHECK_THROWS_AS(maximal_critical_subgraph(quadrangulated_cylinder(4, 4, 4)), GraphError);
}

TEST_CASE("gluing two X7 pieces gives three cutting triangles") {
    auto chain = build_chain(spec_of({"x7", "x7"}));
    REQUIRE(chain.cutting_cycles.size() == 3);
    for (const auto& c : chain.cutting_cycles) CHECK(c.size() == 3);
    CHECK(chain.pieces.size() == 2);
    const auto& g = chain.graph;
    CHECK(is_tame(g));
    CHECK(oracle::triangles(g).size() == 3);
    // every triangle is a cutting cycle
    for (auto t : oracle::triangles(g)) {
        bool found = false;
        for (auto c : chain.cutting_cycles) {
            std::sort(c.begin(), c.end());
            found = found || std::equal(c.begin(), c.end(), t.begin());
        }
        CHECK(found);
    }
    std::set<int> sp;
    for (const auto& c : chain.cutting_cycles) sp.insert(c.begin(), c.end());
    auto spv = special_vertices(chain);
    CHECK(std::set<int>(spv.begin(), spv.end()) == sp);
}

TEST_CASE("a single piece glues to itself") {
    auto spec = spec_of({"q5"});
    auto g = glue_chain(spec);
    CHECK(g.rotations() == catalog().at("q5").rotations());
}

TEST_CASE("decomposition recovers at least the glued cutting cycles") {
    for (const auto& ids : std::vector<std::vector<std::string>>{{"x7", "x7"}, {"q5", "x7", "q5"}, {"x7", "x7", "x7"}}) {
        auto chain = build_chain(spec_of(ids));
        auto dec = decompose_chain(chain.graph);
        REQUIRE(dec.has_value());
        CHECK(dec->pieces.size() >= chain.pieces.size());
        CHECK(chain_violation(chain.graph, dec->cutting_cycles).empty());
    }
    auto q = quadrangulated_cylinder(4, 4, 2);
    auto dq = decompose_chain(q);
    REQUIRE(dq.has_value());
    CHECK(dq->pieces.size() == 2);
}

TEST_CASE("a triangle outside the cutting cycles breaks the chain") {
    auto chain = build_chain(spec_of({"x7", "x7"}));
    std::vector<Cycle> only_rings = {chain.cutting_cycles.front(), chain.cutting_cycles.back()};
    CHECK_FALSE(chain_violation(chain.graph, only_rings).empty());
}

TEST_CASE("non-quadrangulated pieces are counted") {
    CHECK(r_count(build_chain(spec_of({"q1", "q1"}))) == 0);
    CHECK(r_count(build_chain(spec_of({"x7", "x7"}))) == 2);
    CHECK(r_count(build_chain(spec_of({"q5", "x7", "q5"}))) == 1);
    CHECK(is_quadrangulation(catalog().at("q3")));
    CHECK_FALSE(is_quadrangulation(catalog().at("ev1")));
}

TEST_CASE("quadrangulated detection") {
    CHECK(is_quadrangulated(quadrangulated_cylinder(3, 3, 2)) == true);
    CHECK(is_quadrangulated(catalog().at("x7")) == false);
    // a 3-ring and a 4-ring have different parity
    CHECK(is_quadrangulated(catalog().at("ev1")) == false);
    CHECK_FALSE(is_quadrangulated(reduced_thomas_walls(4).graph, 4, 4).has_value());
}

TEST_CASE("legal identifications follow the path rule") {
    auto chain = build_chain(spec_of({"q5", "x7", "q5"}));
    auto sp = special_vertices(chain);
    int legal = 0, illegal = 0;
    for (int piece = 0; piece < static_cast<int>(chain.pieces.size()); ++piece) {
        const auto& pv = chain.piece_vertices[piece];
        std::set<int> in_piece(pv.begin(), pv.end());
        const auto& p = chain.pieces[piece];
        for (const auto& f : chain.graph.faces()) {
            if (f.is_hole || f.vertices.size() != 4) continue;
            if (!std::all_of(f.vertices.begin(), f.vertices.end(), [&](int v) { return in_piece.count(v); })) continue;
            for (int s = 0; s < 2; ++s) {
                Cycle face = {f.vertices[s], f.vertices[s + 1], f.vertices[(s + 2) % 4], f.vertices[(s + 3) % 4]};
                bool mine = legal_identification(chain, piece, face);
                // brute force over all 3-edge paths inside the piece
                std::vector<int> local(chain.graph.n(), -1);
                for (size_t i = 0; i < pv.size(); ++i) local[pv[i]] = static_cast<int>(i);
                int a = local[face[0]], b = local[face[2]];
                auto on = [&](int r, int v) {
                    const auto& ring = p.rings()[r];
                    return std::find(ring.begin(), ring.end(), v) != ring.end();
                };
                bool lo = false, hi = false;
                for (int z1 = 0; z1 < p.n(); ++z1)
                    for (int z2 = 0; z2 < p.n(); ++z2) {
                        if (z1 == z2 || z1 == a || z1 == b || z2 == a || z2 == b) continue;
                        if (!p.adjacent(a, z1) || !p.adjacent(z1, z2) || !p.adjacent(z2, b)) continue;
                        for (int v : {a, z1, z2, b}) {
                            lo = lo || on(0, v);
                            hi = hi || on(1, v);
                        }
                    }
                int specials = std::count(sp.begin(), sp.end(), face[0]) + std::count(sp.begin(), sp.end(), face[2]);
                bool expect = specials <= 1 && !(lo && hi);
                CHECK(mine == expect);
                (mine ? legal : illegal)++;
            }
        }
    }
    CHECK(legal + illegal > 0);
    CHECK_THROWS_AS(legal_identification(chain, 7, {0, 1, 2, 3}), GraphError);
}

TEST_CASE("chain files") {
    auto f = parse_chain_spec("# two pieces\npiece a.graph\npiece b.graph\nglue 1 0 1 2 = 5 4 3\n");
    REQUIRE(f.piece_files.size() == 2);
    CHECK(f.piece_files[1] == "b.graph");
    REQUIRE(f.gluings.size() == 1);
    CHECK(f.gluings[0].from == Cycle{0, 1, 2});
    CHECK(f.gluings[0].to == Cycle{5, 4, 3});
    CHECK_THROWS_AS(parse_chain_spec("piece a\nglue 1 0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_chain_spec("piece a\nglue 2 0 = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_chain_spec("piece a\nglue 1 0 x = 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_chain_spec("stack a\n"), ParseError);
}

TEST_CASE("gluing mismatched rings is rejected") {
    auto spec = spec_of({"x7", "q5"});
    spec.gluings[0].to.pop_back();
    CHECK_THROWS_AS(build_chain(spec), GraphError);
    ChainSpec empty;
    CHECK_THROWS_AS(glue_chain(empty), GraphError);
}
