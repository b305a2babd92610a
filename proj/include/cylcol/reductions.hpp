#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cylcol/coloring.hpp"
#include "cylcol/embedding.hpp"

namespace cylcol {

// A graph together with how each original vertex maps into it (-1 = deleted).
struct Reduced {
    EmbeddedGraph graph;
    std::vector<int> vertex_map;
};

// Merges u and v across the face given by index, splicing their rotations at
// that face. Parallel edges are suppressed keeping the first in rotation
// order; the merged vertex keeps the smaller id and the rest are compacted.
Reduced pinch(const EmbeddedGraph& g, int u, int v, int face);

// Identification of opposite vertices x1, x3 of a 4-face.
Reduced identify(const EmbeddedGraph& g, int x1, int x3, int face);

// Removes what Ty u Tz separates from the rings and merges y1~z1, y2~z2.
// Both triangles start at their shared vertex; the order of the other two
// vertices is normalized to the positive direction.
Reduced collapse_triangles(const EmbeddedGraph& g, const std::array<int, 3>& ty, const std::array<int, 3>& tz);

// Pairs of non-contractible triangles sharing exactly one vertex.
std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> touching_triangles(const EmbeddedGraph& g);

struct Gluing {
    Cycle from;  // vertices of ring 2 of piece i
    Cycle to;    // matching vertices of ring 1 of piece i+1
};

struct ChainSpec {
    std::vector<EmbeddedGraph> pieces;
    std::vector<Gluing> gluings;
};

struct Chain {
    EmbeddedGraph graph;
    std::vector<Cycle> cutting_cycles;          // positively oriented, C_0 .. C_n
    std::vector<EmbeddedGraph> pieces;          // piece i lies between C_{i} and C_{i+1}
    std::vector<std::vector<int>> piece_vertices;  // glued ids, position = piece id
    std::vector<bool> quad_flags;
    // for build_chain: original vertex id of spec piece i -> glued id
    std::vector<std::vector<int>> spec_maps;
};

EmbeddedGraph glue_chain(const ChainSpec& spec);
// Glues and returns the validated chain structure.
Chain build_chain(const ChainSpec& spec);
// Longest valid decomposition, or nothing if the rings cannot start a chain.
std::optional<Chain> decompose_chain(const EmbeddedGraph& g);
// Checks the chain conditions for the given cutting cycles; empty string when valid.
std::string chain_violation(const EmbeddedGraph& g, const std::vector<Cycle>& cycles);
Chain chain_from_cycles(const EmbeddedGraph& g, const std::vector<Cycle>& cycles);

int r_count(const Chain& chain);
std::vector<int> special_vertices(const Chain& chain);

// piece is 0-based (between C_piece and C_piece+1); face lists x1 x2 x3 x4.
bool legal_identification(const Chain& chain, int piece, const Cycle& face);

// Exact search for a quadrangulation subgraph with the same rings; nothing when too large.
std::optional<bool> is_quadrangulated(const EmbeddedGraph& g, int max_vertices = 16, int max_free_edges = 22);

// H dominates G: every extendable precoloring of H pulls back (through
// map_g_to_h) to an extendable precoloring of G.
bool dominates(const EmbeddedGraph& h, const EmbeddedGraph& g, const std::vector<int>& map_g_to_h,
               const SolveLimits& limits = {});

// Extendable set of an abstract graph with the given ring precolorings.
std::vector<char> extendable_flags(const Adjacency& adj, const std::vector<Coloring>& pre, const SolveLimits& limits = {});

bool is_critical(const EmbeddedGraph& g, const SolveLimits& limits = {});
EmbeddedGraph maximal_critical_subgraph(const EmbeddedGraph& g, const SolveLimits& limits = {});

// Text form: lines "piece <file>" and "glue <i> <list> = <list>" (i is 1-based).
struct ChainFile {
    std::vector<std::string> piece_files;
    std::vector<Gluing> gluings;
};
ChainFile parse_chain_spec(const std::string& text);
ChainSpec load_chain_spec(const std::string& path);

}  // namespace cylcol
