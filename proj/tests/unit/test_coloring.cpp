#include <map>
#include <random>

#include "doctest.h"
#include "oracle.hpp"

#include "cylcol/catalog.hpp"
#include "cylcol/coloring.hpp"
#include "cylcol/families.hpp"

using namespace cylcol;

namespace {

EmbeddedGraph k4() {
    return build_graph(4, {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}, {}, Surface::sphere);
}

std::vector<std::pair<std::string, EmbeddedGraph>> ringed_zoo() {
    std::vector<std::pair<std::string, EmbeddedGraph>> out = {
        {"tent00", tent(0, 0).graph},
        {"tent11", tent(1, 1).graph},
        {"patch", canonical_patch()},
        {"tw1", reduced_thomas_walls(1).graph},
        {"tw3", reduced_thomas_walls(3).graph},
        {"htw2e", havel_thomas_walls(2, HtwVariant::edge).graph},
        {"qc3-2", quadrangulated_cylinder(3, 3, 2)},
        {"qc3-3", quadrangulated_cylinder(3, 3, 3)},
        {"qc4-2", quadrangulated_cylinder(4, 4, 2)},
        {"near33", near_33_quadrangulation(quadrangulated_cylinder(3, 3, 2), {{0, 1}}).graph},
    };
    for (const auto& [id, g] : build_catalog())
        if (g.n() <= 14) out.push_back({id, g});
    return out;
}

std::set<std::vector<int>> as_keys(const ExtendableSet& s, int n) {
    std::set<std::vector<int>> out;
    for (const auto& c : s.members(n)) {
        std::vector<int> key;
        for (int v : s.vertices()) key.push_back(c[v]);
        out.insert(key);
    }
    return out;
}

std::vector<std::array<int, 4>> cycle4_colorings() {
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    if (a != b && b != c && c != d && d != a) out.push_back({a, b, c, d});
    return out;
}

}  // namespace

TEST_CASE("K4 has no 3-coloring") {
    auto g = k4();
    CHECK_FALSE(extend_precoloring(g, Coloring(4, -1)).has_value());
    CHECK(solve(adjacency(g), Coloring(4, -1)).status == SolveStatus::fails);
}

TEST_CASE("a bare ring extends every ring coloring") {
    auto g = reduced_thomas_walls(1).graph;
    auto pre = ring_precolorings(g);
    CHECK(pre.size() == 18);
    for (const auto& c : pre) CHECK(extend_precoloring(g, c).has_value());
    auto sq = build_graph(4, {{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {{0, 1, 2, 3}}, Surface::disk);
    CHECK(extendable_set(sq).size() == 18);
}

TEST_CASE("improper precolorings are errors") {
    auto g = tent(0, 0).graph;
    Coloring c(g.n(), -1);
    c[0] = c[1] = 2;
    CHECK_THROWS_AS(extend_precoloring(g, c), ColoringError);
}

TEST_CASE("ring precolorings match enumeration") {
    for (const auto& [id, g] : ringed_zoo()) {
        CAPTURE(id);
        CHECK(ring_precolorings(g) == oracle::ring_colorings(g));
    }
    auto g = reduced_thomas_walls(4).graph;
    CHECK(ring_precolorings(g).size() == 324);
}

TEST_CASE("extendable sets match brute force") {
    for (const auto& [id, g] : ringed_zoo()) {
        CAPTURE(id);
        auto mine = extendable_set(g);
        CHECK(as_keys(mine, g.n()) == oracle::extendable(g));
        CHECK(extendable_set(g, {}, 3) == mine);
    }
}

TEST_CASE("the minimal tent extends exactly the twelve diagonal colorings") {
    auto g = tent(0, 0).graph;
    auto s = extendable_set(g);
    CHECK(s.size() == 12);
    for (const auto& c : s.members(g.n()))
        CHECK(classify_4cycle(g.rings()[0], c) != FourCycleClass::bichromatic);
}

TEST_CASE("the canonical patch extends iff x, y, z use at most two colors") {
    auto p = canonical_patch();
    auto s = extendable_set(p);
    for (const auto& c : ring_precolorings(p)) {
        std::set<int> xyz = {c[0], c[2], c[4]};
        CHECK(s.contains(c) == (xyz.size() <= 2));
    }
}

TEST_CASE("solver agrees with enumeration on random precolorings") {
    std::mt19937_64 rng(2024);
    for (const auto& [id, g] : ringed_zoo()) {
        CAPTURE(id);
        auto adj = adjacency(g);
        for (int trial = 0; trial < 20; ++trial) {
            Coloring pre(g.n(), -1);
            for (int v = 0; v < g.n(); ++v)
                if (rng() % 3 == 0) pre[v] = static_cast<int>(rng() % 3);
            if (!is_proper(adj, pre)) continue;
            auto r = solve(adj, pre);
            bool brute = oracle::extends(g, pre);
            CHECK((r.status == SolveStatus::extends) == brute);
            if (r.status == SolveStatus::extends) {
                CHECK(is_proper(adj, r.coloring));
                for (int v = 0; v < g.n(); ++v) {
                    CHECK(r.coloring[v] >= 0);
                    if (pre[v] >= 0) CHECK(r.coloring[v] == pre[v]);
                }
            }
        }
    }
}

TEST_CASE("node budget is enforced") {
    auto g = thomas_walls(5).graph;
    SolveLimits tight;
    tight.max_nodes = 3;
    CHECK(solve(adjacency(g), Coloring(g.n(), -1), tight).status == SolveStatus::budget_exceeded);
    CHECK_THROWS_AS(extend_precoloring(g, Coloring(g.n(), -1), tight), BudgetExceeded);
}

TEST_CASE("coloring enumeration counts every proper coloring") {
    auto g = quadrangulated_cylinder(3, 3, 1);
    std::uint64_t brute = 0;
    Coloring none(g.n(), -1);
    std::uint64_t total = 1;
    for (int i = 0; i < g.n(); ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
        Coloring c(g.n());
        auto x = code;
        for (int v = 0; v < g.n(); ++v, x /= 3) c[v] = static_cast<int>(x % 3);
        if (is_proper(adjacency(g), c)) ++brute;
    }
    CHECK(for_each_coloring(adjacency(g), none, [](const Coloring&) { return true; }) == brute);
    int seen = 0;
    for_each_coloring(adjacency(g), none, [&](const Coloring&) { return ++seen < 5; });
    CHECK(seen == 5);
}

TEST_CASE("4-cycle colorings split six, six, six") {
    std::map<FourCycleClass, int> counts;
    for (const auto& c : cycle4_colorings()) ++counts[classify_4cycle(c)];
    CHECK(cycle4_colorings().size() == 18);
    CHECK(counts[FourCycleClass::first_diagonal] == 6);
    CHECK(counts[FourCycleClass::second_diagonal] == 6);
    CHECK(counts[FourCycleClass::bichromatic] == 6);
    CHECK(classify_4cycle({1, 2, 1, 2}) == FourCycleClass::bichromatic);
    CHECK(classify_4cycle({0, 1, 2, 1}) == FourCycleClass::first_diagonal);
    CHECK(classify_4cycle({0, 1, 0, 2}) == FourCycleClass::second_diagonal);
    CHECK_THROWS_AS(classify_4cycle({0, 0, 1, 2}), ColoringError);
}

TEST_CASE("danger depends on ring strength") {
    FamilyMeta meta;
    meta.rings = {RingInfo{{0, 1, 2, 3}, true, false}, RingInfo{{4, 5, 6, 7}, true, true}};
    Coloring diag = {0, 1, 2, 1, 0, 1, 2, 1};
    Coloring bich = {0, 1, 0, 1, 0, 1, 0, 1};
    Coloring other = {0, 1, 0, 2, 0, 1, 0, 2};
    CHECK(is_dangerous(meta, 0, diag));
    CHECK_FALSE(is_dangerous(meta, 0, bich));
    CHECK(is_dangerous(meta, 1, bich));
    CHECK_FALSE(is_dangerous(meta, 1, other));
    FamilyMeta bare;
    bare.rings = {RingInfo{{0, 1, 2, 3}, false, false}};
    CHECK_THROWS_AS(is_dangerous(bare, 0, diag), ColoringError);
}

TEST_CASE("orientation follows the color step") {
    auto g = build_graph(2, {{1}, {0}}, {}, Surface::sphere);
    auto arcs = orient(g, {0, 1});
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].head == 1);
    CHECK(orient(g, {2, 0})[0].head == 1);
    CHECK(orient(g, {1, 0})[0].head == 0);
    CHECK_THROWS_AS(orient(g, {1, 1}), ColoringError);
}

TEST_CASE("omega on triangles and 4-cycles") {
    auto g = k4();
    Coloring c = {0, 1, 2, -1};
    CHECK(omega(g, {0, 1, 2}, c) == 3);
    CHECK(omega(g, {2, 1, 0}, c) == -3);
    auto sq = build_graph(4, {{1, 3}, {2, 0}, {3, 1}, {0, 2}}, {{0, 1, 2, 3}}, Surface::disk);
    for (const auto& a : cycle4_colorings()) CHECK(omega(sq, {0, 1, 2, 3}, {a[0], a[1], a[2], a[3]}) == 0);
    CHECK_THROWS_AS(omega(sq, {0, 2, 1, 3}, {0, 1, 0, 1}), ColoringError);
}

TEST_CASE("winding numbers are conserved across quadrangulations") {
    for (auto g : {quadrangulated_cylinder(3, 3, 2), quadrangulated_cylinder(3, 3, 3), quadrangulated_cylinder(4, 4, 2),
                   random_quad_splits(quadrangulated_cylinder(3, 3, 2), 2, 5)}) {
        int checked = 0;
        for_each_coloring(adjacency(g), Coloring(g.n(), -1), [&](const Coloring& phi) {
            int w0 = winding_number(g, phi, g.rings()[0]);
            int w1 = winding_number(g, phi, g.rings()[1]);
            CHECK(w0 == w1);
            int len = static_cast<int>(g.rings()[0].size());
            CHECK(std::abs(3 * w0) <= len);
            CHECK(((w0 - len) % 2 + 2) % 2 == 0);
            if (len == 3) CHECK(std::abs(w0) == 1);
            if (len == 4) CHECK(w0 == 0);
            ++checked;
            return true;
        });
        CHECK(checked > 0);
    }
}

TEST_CASE("opposite windings on a 3,3 cylinder never extend") {
    auto g = quadrangulated_cylinder(3, 3, 3);
    int opposite = 0, same = 0;
    for (const auto& psi : ring_precolorings(g)) {
        int w0 = winding_number(g, psi, g.rings()[0]);
        int w1 = winding_number(g, psi, g.rings()[1]);
        bool ext = oracle::extends(g, psi);
        if (w0 != w1) {
            ++opposite;
            CHECK_FALSE(ext);
        } else {
            ++same;
            CHECK(ext);
        }
        CHECK(causes_winding_number(g, 0, psi) == w0);
        CHECK(is_consistent(g, psi) == (w0 == w1));
    }
    CHECK(opposite == 18);
    CHECK(same == 18);
}

TEST_CASE("caused winding numbers predict every extension") {
    auto base = quadrangulated_cylinder(3, 3, 2);
    const auto& r0 = base.rings()[0];
    const auto& r1 = base.rings()[1];
    for (const auto& edges : std::vector<std::vector<Edge>>{{{r0[0], r0[1]}}, {{r0[0], r0[1]}, {r1[0], r1[1]}}}) {
        auto g = near_33_quadrangulation(base, edges).graph;
        for (const auto& psi : ring_precolorings(g)) {
            bool ext = oracle::extends(g, psi);
            // extending requires consistency at any ring distance
            if (ext) CHECK(is_consistent(g, psi));
            for (int r = 0; r < 2; ++r) {
                auto w = causes_winding_number(g, r, psi);
                if (!w || !ext) continue;
                // the other ring is a triangle here, so conservation pins its winding
                if (g.rings()[1 - r].size() == 3) {
                    auto phi = extend_precoloring(g, psi);
                    REQUIRE(phi.has_value());
                    CHECK(winding_number(g, *phi, g.rings()[1 - r]) == *w);
                }
            }
        }
    }
}

TEST_CASE("a subdivided ring causes nothing when the subdivision vertex sees one color") {
    auto base = quadrangulated_cylinder(3, 3, 2);
    const auto& r0 = base.rings()[0];
    auto g = near_33_quadrangulation(base, {{r0[0], r0[1]}}).graph;
    int mid = g.n() - 1;
    const auto& nb = g.rotation(mid);
    REQUIRE(nb.size() == 2);
    for (const auto& psi : ring_precolorings(g))
        CHECK(causes_winding_number(g, 0, psi).has_value() == (psi[nb[0]] != psi[nb[1]]));
}

TEST_CASE("six-cycle nonextension") {
    CHECK(six_cycle_nonextension({0, 1, 2, 0, 1, 2}, {}));
    CHECK_FALSE(six_cycle_nonextension({0, 1, 0, 1, 0, 1}, {}));
    CHECK(six_cycle_nonextension({0, 1, 2, 0, 2, 1}, {{0, 3}}));
    CHECK_FALSE(six_cycle_nonextension({0, 1, 2, 0, 2, 1}, {{1, 4}}));
    CHECK_THROWS_AS(six_cycle_nonextension({0, 0, 1, 2, 1, 2}, {}), ColoringError);
}

TEST_CASE("six-cycle condition agrees with a hexagon around a claw") {
    // center adjacent to v1, v3, v5: fails exactly when those get three colors
    auto g = from_unoriented_faces(7, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 6}, {2, 3, 4, 6}, {4, 5, 0, 6}}, {0}, Surface::disk);
    for (const auto& psi : ring_precolorings(g)) {
        std::array<int, 6> c;
        for (int i = 0; i < 6; ++i) c[i] = psi[i];
        bool fails = !oracle::extends(g, psi);
        std::set<int> odd = {c[0], c[2], c[4]};
        CHECK(fails == (odd.size() == 3));
        if (six_cycle_nonextension(c, {})) CHECK(fails);
    }
}

TEST_CASE("extendable set packing") {
    ExtendableSet s({2, 5});
    Coloring c = {-1, -1, 1, -1, -1, 2};
    s.insert(c);
    s.insert(c);
    CHECK(s.size() == 1);
    CHECK(s.contains(c));
    CHECK(s.encode(c) == 6);
    ExtendableSet t({2, 5});
    CHECK(t.subset_of(s));
    CHECK_FALSE(s.subset_of(t));
    CHECK(s.members(6) == std::vector<Coloring>{c});
    CHECK_THROWS_AS(s.encode(Coloring(6, -1)), ColoringError);
}
