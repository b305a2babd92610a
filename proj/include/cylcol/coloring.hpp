#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cylcol/embedding.hpp"
#include "cylcol/families.hpp"
#include "cylcol/io.hpp"

namespace cylcol {

struct ColoringError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveLimits {
    int max_vertices = 40;
    std::uint64_t max_nodes = 100000000;
};

enum class SolveStatus { extends, fails, budget_exceeded };

struct SolveResult {
    SolveStatus status = SolveStatus::fails;
    Coloring coloring;
    std::uint64_t nodes = 0;
};

using Adjacency = std::vector<std::vector<int>>;

// True when no edge joins two vertices of equal color (uncolored ends ignored).
bool is_proper(const Adjacency& adj, const Coloring& c);

// Forward-checking backtracking; picks the uncolored vertex with the fewest
// remaining colors, then the most colored neighbors, then the smallest id.
SolveResult solve(const Adjacency& adj, const Coloring& pre, const SolveLimits& limits = {});

// Calls visit on every proper total coloring extending pre, in search order,
// until visit returns false. Returns the number of colorings visited.
std::uint64_t for_each_coloring(const Adjacency& adj, const Coloring& pre,
                                const std::function<bool(const Coloring&)>& visit);

// Throws ColoringError when pre is improper and BudgetExceeded past the limits.
std::optional<Coloring> extend_precoloring(const EmbeddedGraph& g, const Coloring& pre,
                                           const SolveLimits& limits = {});

std::vector<Edge> ring_edges(const EmbeddedGraph& g);
// All proper colorings of the ring subgraph, as full-length colorings with
// every other vertex uncolored; ordered lexicographically on ring_vertices().
std::vector<Coloring> ring_precolorings(const EmbeddedGraph& g);
std::vector<Coloring> proper_colorings(int n, const std::vector<int>& vertices, const std::vector<Edge>& edges);

// Set of colorings of a fixed vertex list, packed two bits per vertex.
class ExtendableSet {
public:
    ExtendableSet() = default;
    explicit ExtendableSet(std::vector<int> vertices);

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<std::uint64_t>& codes() const { return codes_; }
    std::size_t size() const { return codes_.size(); }

    std::uint64_t encode(const Coloring& c) const;
    void insert(const Coloring& c);
    void insert_code(std::uint64_t code);
    bool contains(const Coloring& c) const;
    bool subset_of(const ExtendableSet& other) const;
    // Colorings of length n with only the listed vertices colored.
    std::vector<Coloring> members(int n) const;

    bool operator==(const ExtendableSet& other) const {
        return vertices_ == other.vertices_ && codes_ == other.codes_;
    }

private:
    void finalize();
    std::vector<int> vertices_;
    std::vector<std::uint64_t> codes_;
    bool sorted_ = true;
};

// Solves every ring precoloring; jobs > 1 spreads them over threads.
ExtendableSet extendable_set(const EmbeddedGraph& g, const SolveLimits& limits = {}, int jobs = 1);

enum class FourCycleClass { first_diagonal, second_diagonal, bichromatic };

// colors of (u1, u2, u3, u4) around a 4-cycle
FourCycleClass classify_4cycle(const std::array<int, 4>& colors);
FourCycleClass classify_4cycle(const Cycle& c, const Coloring& psi);

bool is_dangerous(const FamilyMeta& meta, int ring, const Coloring& psi);

struct Arc {
    int tail;
    int head;
};
// Edge uv points toward v iff color(v) - color(u) is 1 mod 3.
std::vector<Arc> orient(const EmbeddedGraph& g, const Coloring& phi);
// Forward minus backward arcs along the closed walk (first vertex not repeated).
int omega(const EmbeddedGraph& g, const std::vector<int>& walk, const Coloring& phi);
// omega / 3 along c traversed in the positive direction.
int winding_number(const EmbeddedGraph& g, const Coloring& phi, const Cycle& c);

// Winding number forced on the given ring of a near 3,3-quadrangulation, if any.
std::optional<int> causes_winding_number(const EmbeddedGraph& g, int ring, const Coloring& psi);
bool is_consistent(const EmbeddedGraph& g, const Coloring& psi);

// Colors of v1..v6 around a 6-cycle; chords given as position pairs.
bool six_cycle_nonextension(const std::array<int, 6>& psi, const std::vector<std::pair<int, int>>& chords);

}  // namespace cylcol
