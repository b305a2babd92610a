#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylcol/embedding.hpp"

namespace cylcol {

// Labels of a 4-ring as (v1, v2, v3, v4); the interface pair is (v1, v3).
struct RingInfo {
    Cycle labels;
    bool has_interface = false;
    bool strong = false;
    bool y_framed = false;  // v2 was created by framing
    bool w_framed = false;  // v4 was created by framing
    bool patched = false;   // v2 or v4 was replaced by a patch
    Edge interface_pair() const { return {labels.at(0), labels.at(2)}; }
};

struct FamilyMeta {
    std::string family;
    std::vector<RingInfo> rings;          // parallel to the graph's rings
    std::vector<int> patched_vertices;    // ids before patching
    std::map<std::string, int> labels;    // named vertices, e.g. "u1" -> 0
    std::optional<Edge> designated_edge;  // u1u3 of a Thomas-Walls graph
};

struct FamilyGraph {
    EmbeddedGraph graph;
    FamilyMeta meta;
};

// K4 grown by the triangle step; sphere, 3n+1 vertices.
FamilyGraph thomas_walls(int n);
// Thomas-Walls graph minus both interface chords, in the cylinder.
FamilyGraph reduced_thomas_walls(int n);

// Ring x a y b z c (ids 0..5) and a center 6 adjacent to x, y and z.
EmbeddedGraph canonical_patch();
// Ring r0..r5, inner hexagon s0..s5 joined by rungs, center adjacent to s0, s2, s4.
EmbeddedGraph hex_layer_patch();
std::vector<EmbeddedGraph> shipped_patches();
bool is_patch(const EmbeddedGraph& f);

// Replaces every vertex of S by a patch. patches may be empty (canonical patch
// everywhere), hold one graph (used everywhere) or one graph per vertex of S.
FamilyGraph apply_patching(const FamilyGraph& g, const std::vector<int>& S,
                           const std::vector<EmbeddedGraph>& patches = {});
// Maximal independent set of degree-3 vertices, chosen greedily by id.
std::vector<int> greedy_patch_set(const EmbeddedGraph& g);

struct FramingChoice {
    bool y_new = false;
    bool w_new = false;
};
FamilyGraph apply_framing(const FamilyGraph& g, const std::vector<FramingChoice>& choices);

// Ids: v1=0 v2=1 v3=2 v4=3 z1=4 z2=5; each extra layer adds two vertices.
FamilyGraph tent(int left_depth, int right_depth);
bool is_tent(const EmbeddedGraph& g);

// Sphere gadget, ids u1=0 u3=1 y1=2 w1=3 y2=4 w2=5 t1=6 t2=7.
EmbeddedGraph havel_quasiedge();

enum class HtwVariant { edge, quasiedge };
FamilyGraph havel_thomas_walls(int n, HtwVariant variant);

// Stacked layers of r-cycles joined by quadrilaterals; layer j vertex i has id j*r+i.
EmbeddedGraph quadrangulated_cylinder(int r1, int r2, int layers);
// Splits a 4-face (a,b,c,d) by a new vertex adjacent to a and c (shift picks a).
EmbeddedGraph split_quad_face(const EmbeddedGraph& g, int face, int shift);
EmbeddedGraph random_quad_splits(const EmbeddedGraph& g, int count, std::uint64_t seed);
EmbeddedGraph subdivide_edge(const EmbeddedGraph& g, int u, int v);

bool is_33_quadrangulation(const EmbeddedGraph& g);
bool is_near_33_quadrangulation(const EmbeddedGraph& g);
// Subdivides the listed ring edges, at most one per ring.
FamilyGraph near_33_quadrangulation(const EmbeddedGraph& base, const std::vector<Edge>& subdivide);

// Every face other than the hole faces has length 4.
bool is_quadrangulation(const EmbeddedGraph& g);

}  // namespace cylcol
