#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cylcol {

enum class Surface { sphere, disk, cylinder };

std::string to_string(Surface s);
Surface parse_surface(const std::string& name);
int hole_count(Surface s);

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cycle = std::vector<int>;
using Edge = std::pair<int, int>;

struct FaceWalk {
    std::vector<int> vertices;
    bool is_hole = false;
    int ring = -1;
};

// Rotation system with rings. Rotations list neighbors counterclockwise;
// the face to the left of dart u->v continues with v->w where w precedes u
// in the rotation of v.
class EmbeddedGraph {
public:
    EmbeddedGraph() = default;

    int n() const { return static_cast<int>(rot_.size()); }
    int num_edges() const { return num_edges_; }
    Surface surface() const { return surface_; }
    const std::vector<int>& rotation(int v) const { return rot_.at(v); }
    const std::vector<std::vector<int>>& rotations() const { return rot_; }
    const std::vector<Cycle>& rings() const { return rings_; }
    const std::vector<FaceWalk>& faces() const { return faces_; }

    int degree(int v) const { return static_cast<int>(rot_.at(v).size()); }
    bool adjacent(int u, int v) const;
    std::vector<Edge> edges() const;
    const std::vector<int>& neighbors_sorted(int v) const { return sorted_.at(v); }

    // Index of the face containing dart u->v.
    int face_of_dart(int u, int v) const;
    int hole_face(int ring) const { return hole_face_.at(ring); }

    std::vector<int> ring_vertices() const;
    bool on_ring(int v) const;
    bool is_ring_edge(int u, int v) const;
    // True when every vertex and edge lies on a ring.
    bool equals_rings() const;

    friend EmbeddedGraph build_graph(int n, std::vector<std::vector<int>> rotations,
                                     std::vector<Cycle> rings, Surface surface);

private:
    std::vector<std::vector<int>> rot_;
    std::vector<std::vector<int>> sorted_;
    std::vector<std::vector<int>> dart_face_;
    std::vector<Cycle> rings_;
    std::vector<FaceWalk> faces_;
    std::vector<int> hole_face_;
    Surface surface_ = Surface::sphere;
    int num_edges_ = 0;
};

EmbeddedGraph build_graph(int n, std::vector<std::vector<int>> rotations, std::vector<Cycle> rings,
                          Surface surface);

// Builds the rotation system from consistently oriented face walks (each dart
// in exactly one walk). Rotations start at the smallest neighbor.
EmbeddedGraph from_faces(int n, const std::vector<std::vector<int>>& faces, std::vector<Cycle> rings,
                         Surface surface);

// Orients unoriented face cycles consistently (flipping as needed, the first
// face keeps its direction) and builds the graph. Rings are the faces listed in
// hole_faces, each rotated to start at its first listed vertex.
EmbeddedGraph from_unoriented_faces(int n, std::vector<std::vector<int>> faces,
                                    const std::vector<int>& hole_faces, Surface surface);

// Face walks of all faces, oriented as traced (hole faces included).
std::vector<std::vector<int>> face_list(const EmbeddedGraph& g);

std::vector<FaceWalk> trace_faces(const EmbeddedGraph& g);

EmbeddedGraph mirror(const EmbeddedGraph& g);

// Keeps the listed vertices (in order, new id = position) and the edges among
// them that are not in removed_edges; rotations are restricted.
EmbeddedGraph induced_restriction(const EmbeddedGraph& g, const std::vector<int>& keep,
                                  const std::vector<Edge>& removed_edges, std::vector<Cycle> rings);

bool is_cycle(const EmbeddedGraph& g, const Cycle& c);
Cycle canonical_cycle(const Cycle& c);

// Faces reachable from the faces to the left of the darts of c without crossing c.
std::vector<bool> dart_side(const EmbeddedGraph& g, const Cycle& c);
bool is_contractible(const EmbeddedGraph& g, const Cycle& c);
// For a non-contractible cycle: true when the hole of ring 0 lies on the dart side.
bool is_positive(const EmbeddedGraph& g, const Cycle& c);
Cycle positive_orientation(const EmbeddedGraph& g, const Cycle& c);

std::vector<std::array<int, 3>> triangles(const EmbeddedGraph& g);
bool is_tame(const EmbeddedGraph& g);
int cycle_distance(const EmbeddedGraph& g, const std::vector<int>& a, const std::vector<int>& b);
std::vector<Cycle> short_cycles(const EmbeddedGraph& g, int max_len);
std::vector<Cycle> noncontractible_short_cycles(const EmbeddedGraph& g, int max_len);
bool is_face_cycle(const EmbeddedGraph& g, const Cycle& c);

std::vector<std::vector<int>> adjacency(const EmbeddedGraph& g);

}  // namespace cylcol
