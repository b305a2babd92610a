#include "cylcol/families.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cylcol {

namespace {

using Faces = std::vector<std::vector<int>>;

struct ReducedBuild {
    int n = 0;
    Faces faces;  // non-hole faces
    Cycle c1, c2;
};

ReducedBuild build_reduced(int steps) {
    ReducedBuild b;
    b.n = 4;
    b.c1 = {0, 1, 2, 3};
    b.c2 = {1, 0, 3, 2};
    for (int s = 1; s < steps; ++s) {
        int p1 = b.c2[0], p2 = b.c2[1], p3 = b.c2[2], p4 = b.c2[3];
        int a = b.n, bb = b.n + 1, c = b.n + 2;
        b.n += 3;
        b.faces.push_back({p1, p2, p3, a, bb});
        b.faces.push_back({p3, p4, p1, bb, c});
        b.c2 = {c, bb, a, p3};
    }
    return b;
}

void label_ring(FamilyMeta& meta, const std::string& prefix, const Cycle& c) {
    for (int i = 0; i < 4; ++i) meta.labels[prefix + std::to_string(i + 1)] = c[i];
}

// Walks of all faces with vertex ids remapped through map (-1 entries must not occur).
Faces remap_faces(const Faces& faces, const std::vector<int>& map) {
    Faces out;
    for (const auto& f : faces) {
        std::vector<int> g;
        for (int v : f) g.push_back(map[v]);
        out.push_back(g);
    }
    return out;
}

Cycle remap_cycle(const Cycle& c, const std::vector<int>& map) {
    Cycle out;
    for (int v : c) out.push_back(map[v]);
    return out;
}

bool has_face_length_profile(const EmbeddedGraph& g, int len) {
    for (const auto& f : g.faces())
        if (!f.is_hole && static_cast<int>(f.vertices.size()) != len) return false;
    return true;
}

}  // namespace

FamilyGraph reduced_thomas_walls(int n) {
    if (n < 1) throw GraphError("reduced Thomas-Walls graph needs n >= 1");
    auto b = build_reduced(n);
    Faces all = b.faces;
    all.push_back(b.c1);
    all.push_back(b.c2);
    FamilyGraph out{from_faces(b.n, all, {b.c1, b.c2}, Surface::cylinder), {}};
    out.meta.family = "reduced-thomas-walls";
    bool strong = n >= 2;
    out.meta.rings = {RingInfo{b.c1, true, strong}, RingInfo{b.c2, true, strong}};
    label_ring(out.meta, "u", b.c1);
    label_ring(out.meta, "v", b.c2);
    return out;
}

FamilyGraph thomas_walls(int n) {
    if (n < 1) throw GraphError("Thomas-Walls graph needs n >= 1");
    auto b = build_reduced(n);
    Faces all = b.faces;
    const Cycle& u = b.c1;
    const Cycle& v = b.c2;
    all.push_back({u[0], u[1], u[2]});
    all.push_back({u[2], u[3], u[0]});
    all.push_back({v[0], v[1], v[2]});
    all.push_back({v[2], v[3], v[0]});
    FamilyGraph out{from_faces(b.n, all, {}, Surface::sphere), {}};
    out.meta.family = "thomas-walls";
    label_ring(out.meta, "u", u);
    label_ring(out.meta, "v", v);
    out.meta.designated_edge = Edge{std::min(u[0], u[2]), std::max(u[0], u[2])};
    return out;
}

EmbeddedGraph canonical_patch() {
    // x=0 a=1 y=2 b=3 z=4 c=5 w=6
    Faces faces = {{0, 1, 2, 3, 4, 5}, {1, 0, 6, 2}, {3, 2, 6, 4}, {5, 4, 6, 0}};
    return from_faces(7, faces, {{0, 1, 2, 3, 4, 5}}, Surface::disk);
}

EmbeddedGraph hex_layer_patch() {
    // r_i = i, s_i = 6 + i, center 12
    Faces faces;
    Cycle ring = {0, 1, 2, 3, 4, 5};
    faces.push_back(ring);
    for (int i = 0; i < 6; ++i) {
        int j = (i + 1) % 6;
        faces.push_back({j, i, 6 + i, 6 + j});
    }
    for (int k = 0; k < 3; ++k) {
        int s0 = 6 + 2 * k, s1 = 6 + 2 * k + 1, s2 = 6 + (2 * k + 2) % 6;
        faces.push_back({s0, 12, s2, s1});
    }
    return from_faces(13, faces, {ring}, Surface::disk);
}

std::vector<EmbeddedGraph> shipped_patches() { return {canonical_patch(), hex_layer_patch()}; }

bool is_patch(const EmbeddedGraph& f) {
    if (f.surface() != Surface::disk || f.rings().size() != 1) return false;
    const Cycle& c = f.rings()[0];
    if (c.size() != 6) throw GraphError("patch ring must have length 6");
    for (int i = 0; i < 6; ++i)
        for (int j = i + 2; j < 6; ++j) {
            if (i == 0 && j == 5) continue;
            if (f.adjacent(c[i], c[j])) return false;
        }
    if (!has_face_length_profile(f, 4)) return false;
    for (const auto& cyc : short_cycles(f, 4))
        if (cyc.size() == 3 || !is_face_cycle(f, cyc)) return false;
    return true;
}

std::vector<int> greedy_patch_set(const EmbeddedGraph& g) {
    std::vector<int> out;
    std::vector<bool> blocked(g.n(), false);
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) != 3 || blocked[v]) continue;
        out.push_back(v);
        for (int w : g.rotation(v)) blocked[w] = true;
    }
    return out;
}

FamilyGraph apply_patching(const FamilyGraph& fg, const std::vector<int>& S_in,
                           const std::vector<EmbeddedGraph>& patches) {
    const EmbeddedGraph& g = fg.graph;
    std::vector<int> S = S_in;
    std::sort(S.begin(), S.end());
    if (std::adjacent_find(S.begin(), S.end()) != S.end()) throw GraphError("patch set repeats a vertex");
    for (size_t i = 0; i < S.size(); ++i) {
        if (S[i] < 0 || S[i] >= g.n()) throw GraphError("patch vertex out of range");
        if (g.degree(S[i]) != 3)
            throw GraphError("vertex " + std::to_string(S[i]) + " has degree " + std::to_string(g.degree(S[i])) +
                             ", patching needs degree 3");
        for (size_t j = 0; j < i; ++j)
            if (g.adjacent(S[i], S[j])) throw GraphError("patch set is not independent");
    }
    if (!patches.empty() && patches.size() != 1 && patches.size() != S.size())
        throw GraphError("need one patch, or one per patched vertex");
    for (const auto& p : patches)
        if (!is_patch(p)) throw GraphError("invalid patch");
    if (S.empty()) return fg;

    Faces faces;
    for (const auto& f : g.faces()) faces.push_back(f.vertices);
    std::vector<Cycle> rings = g.rings();
    FamilyMeta meta = fg.meta;
    int next = g.n();
    EmbeddedGraph fallback = canonical_patch();
    for (size_t k = 0; k < S.size(); ++k) {
        int v = S[k];
        const EmbeddedGraph& patch = patches.empty() ? fallback : patches[patches.size() == 1 ? 0 : k];
        const auto& r = g.rotation(v);
        // corner vertex sitting between p and its predecessor around v
        std::map<int, int> corner;
        for (int p : r) corner[p] = next++;
        std::vector<int> target = {r[0], corner[r[0]], r[2], corner[r[2]], r[1], corner[r[1]]};
        auto replace = [&](std::vector<int>& walk) {
            int m = static_cast<int>(walk.size());
            std::vector<int> orig = walk;
            for (int i = 0; i < m; ++i)
                if (orig[i] == v) walk[i] = corner.at(orig[(i - 1 + m) % m]);
        };
        for (auto& f : faces) replace(f);
        for (size_t ri = 0; ri < rings.size(); ++ri) {
            Cycle before = rings[ri];
            replace(rings[ri]);
            if (ri < meta.rings.size()) {
                auto& info = meta.rings[ri];
                Cycle old_labels = info.labels;
                for (auto& x : info.labels)
                    if (x == v) {
                        int pos = static_cast<int>(std::find(before.begin(), before.end(), v) - before.begin());
                        x = rings[ri][pos];
                    }
                if (!old_labels.empty() && old_labels.size() == 4 && (old_labels[1] == v || old_labels[3] == v)) {
                    info.patched = true;
                    info.strong = false;
                }
            }
        }
        const Cycle& pr = patch.rings()[0];
        std::vector<int> pmap(patch.n(), -1);
        for (int i = 0; i < 6; ++i) pmap[pr[i]] = target[i];
        for (int x = 0; x < patch.n(); ++x)
            if (pmap[x] < 0) pmap[x] = next++;
        for (const auto& f : patch.faces())
            if (!f.is_hole) faces.push_back(remap_cycle(f.vertices, pmap));
    }
    // drop the patched vertices and compact ids
    std::vector<int> map(next, -1);
    int id = 0;
    std::set<int> removed(S.begin(), S.end());
    for (int x = 0; x < next; ++x)
        if (!removed.count(x)) map[x] = id++;
    for (auto& ri : rings) ri = remap_cycle(ri, map);
    FamilyGraph out{from_faces(id, remap_faces(faces, map), rings, g.surface()), meta};
    for (auto& info : out.meta.rings) info.labels = remap_cycle(info.labels, map);
    for (auto it = out.meta.labels.begin(); it != out.meta.labels.end();) {
        if (map[it->second] < 0) {
            it = out.meta.labels.erase(it);
        } else {
            it->second = map[it->second];
            ++it;
        }
    }
    if (out.meta.designated_edge) {
        auto [a, b] = *out.meta.designated_edge;
        out.meta.designated_edge = Edge{map[a], map[b]};
    }
    out.meta.patched_vertices.insert(out.meta.patched_vertices.end(), S.begin(), S.end());
    return out;
}

FamilyGraph apply_framing(const FamilyGraph& fg, const std::vector<FramingChoice>& choices) {
    const EmbeddedGraph& g = fg.graph;
    if (choices.size() != g.rings().size()) throw GraphError("need one framing choice per ring");
    Faces faces;
    for (const auto& f : g.faces())
        if (!f.is_hole) faces.push_back(f.vertices);
    std::vector<Cycle> rings = g.rings();
    FamilyMeta meta = fg.meta;
    int next = g.n();
    for (size_t r = 0; r < rings.size(); ++r) {
        if (r >= meta.rings.size() || !meta.rings[r].has_interface || meta.rings[r].labels.size() != 4)
            throw GraphError("ring " + std::to_string(r) + " has no interface pair");
        auto& info = meta.rings[r];
        if (rings[r] != info.labels) throw GraphError("ring labels out of sync with the ring");
        int x = rings[r][0], y = rings[r][1], z = rings[r][2], w = rings[r][3];
        int y2 = y, w2 = w;
        if (choices[r].y_new) {
            y2 = next++;
            faces.push_back({x, y, z, y2});
        }
        if (choices[r].w_new) {
            w2 = next++;
            faces.push_back({z, w, x, w2});
        }
        rings[r] = {x, y2, z, w2};
        info.labels = rings[r];
        if (choices[r].y_new) info.y_framed = true;
        if (choices[r].w_new) info.w_framed = true;
        if (choices[r].y_new || choices[r].w_new) info.strong = false;
    }
    for (const auto& ri : rings) faces.push_back(ri);
    FamilyGraph out{from_faces(next, faces, rings, g.surface()), meta};
    bool equals_rings = out.graph.equals_rings();
    for (auto& info : out.meta.rings)
        if (equals_rings) info.strong = false;
    return out;
}

FamilyGraph tent(int left_depth, int right_depth) {
    if (left_depth < 0 || right_depth < 0) throw GraphError("tent depths must be non-negative");
    Faces faces = {{1, 0, 4}, {3, 2, 5}};
    // hexagon k0..k5 made of the two quads on its diameter k1-k4
    std::vector<int> k = {3, 5, 2, 1, 4, 0};
    int next = 6;
    for (int s = 0; s < left_depth + right_depth; ++s) {
        int a = next++, b = next++;
        if (s < left_depth) {
            faces.push_back({k[1], k[2], k[3], a});
            faces.push_back({b, k[4], k[5], k[0]});
            k = {k[1], a, k[3], k[4], b, k[0]};
        } else {
            faces.push_back({b, k[2], k[3], k[4]});
            faces.push_back({a, k[5], k[0], k[1]});
            k = {k[5], a, k[1], k[2], b, k[4]};
        }
    }
    faces.push_back({k[1], k[2], k[3], k[4]});
    faces.push_back({k[4], k[5], k[0], k[1]});
    Cycle ring = {0, 1, 2, 3};
    faces.push_back(ring);
    FamilyGraph out{from_faces(next, faces, {ring}, Surface::disk), {}};
    out.meta.family = "tent";
    out.meta.rings = {RingInfo{ring, false, false}};
    out.meta.labels = {{"v1", 0}, {"v2", 1}, {"v3", 2}, {"v4", 3}, {"z1", 4}, {"z2", 5}};
    return out;
}

bool is_tent(const EmbeddedGraph& g) {
    if (g.surface() != Surface::disk || g.rings().size() != 1 || g.rings()[0].size() != 4) return false;
    const Cycle& c = g.rings()[0];
    std::vector<std::vector<int>> tri;
    for (const auto& f : g.faces()) {
        if (f.is_hole) continue;
        if (f.vertices.size() == 3)
            tri.push_back(f.vertices);
        else if (f.vertices.size() != 4)
            return false;
    }
    if (tri.size() != 2) return false;
    // triangle on ring edge ab with its third vertex off the ring
    auto caps = [&](const std::vector<int>& t, int a, int b) {
        bool ha = std::count(t.begin(), t.end(), a) > 0, hb = std::count(t.begin(), t.end(), b) > 0;
        if (!ha || !hb) return false;
        for (int x : t)
            if (x != a && x != b) return !g.on_ring(x);
        return false;
    };
    for (int s = 0; s < 2; ++s) {
        int v1 = c[s], v2 = c[s + 1], v3 = c[s + 2], v4 = c[(s + 3) % 4];
        if (g.adjacent(v1, v3) || g.adjacent(v2, v4)) return false;
        if ((caps(tri[0], v1, v2) && caps(tri[1], v3, v4)) || (caps(tri[1], v1, v2) && caps(tri[0], v3, v4)))
            return true;
    }
    return false;
}

EmbeddedGraph havel_quasiedge() {
    // u1=0 u3=1 y1=2 w1=3 y2=4 w2=5 t1=6 t2=7
    Faces faces = {{2, 3, 6}, {5, 4, 7}, {0, 2, 6, 7, 4}, {3, 1, 5, 7, 6}, {0, 4, 5, 1, 3, 2}};
    return from_faces(8, faces, {}, Surface::sphere);
}

FamilyGraph havel_thomas_walls(int n, HtwVariant variant) {
    if (n < 1) throw GraphError("Havel-Thomas-Walls graph needs n >= 1");
    auto b = build_reduced(n);
    Faces faces = b.faces;
    const Cycle& u = b.c1;
    int next = b.n;
    FamilyMeta meta;
    if (variant == HtwVariant::edge) {
        faces.push_back({u[0], u[1], u[2]});
        faces.push_back({u[2], u[3], u[0]});
        meta.family = "havel-thomas-walls-edge";
    } else {
        int u1 = u[0], u3 = u[2];
        int y1 = next++, w1 = next++, y2 = next++, w2 = next++, t1 = next++, t2 = next++;
        faces.push_back({u1, u[1], u3, w1, y1});
        faces.push_back({u3, u[3], u1, y2, w2});
        faces.push_back({y1, w1, t1});
        faces.push_back({w2, y2, t2});
        faces.push_back({u1, y1, t1, t2, y2});
        faces.push_back({w1, u3, w2, t2, t1});
        meta.family = "havel-thomas-walls-quasiedge";
        meta.labels = {{"y1", y1}, {"w1", w1}, {"y2", y2}, {"w2", w2}, {"t1", t1}, {"t2", t2}};
    }
    faces.push_back(b.c2);
    FamilyGraph out{from_faces(next, faces, {b.c2}, Surface::disk), meta};
    out.meta.rings = {RingInfo{b.c2, true, true}};
    label_ring(out.meta, "u", u);
    label_ring(out.meta, "v", b.c2);
    return out;
}

EmbeddedGraph quadrangulated_cylinder(int r1, int r2, int layers) {
    if (r1 < 3 || r2 < 3) throw GraphError("ring length must be at least 3");
    if ((r1 - r2) % 2 != 0) throw GraphError("ring lengths of a quadrangulated cylinder must have equal parity");
    if (r1 != r2) throw GraphError("only equal ring lengths are generated");
    if (layers < 1) throw GraphError("need at least one layer");
    int r = r1;
    Faces faces;
    for (int j = 0; j < layers; ++j)
        for (int i = 0; i < r; ++i) {
            int i1 = (i + 1) % r;
            faces.push_back({j * r + i, j * r + i1, (j + 1) * r + i1, (j + 1) * r + i});
        }
    Cycle c1 = {0}, c2;
    for (int i = r - 1; i >= 1; --i) c1.push_back(i);
    for (int i = 0; i < r; ++i) c2.push_back(layers * r + i);
    faces.push_back(c1);
    faces.push_back(c2);
    return from_faces((layers + 1) * r, faces, {c1, c2}, Surface::cylinder);
}

EmbeddedGraph split_quad_face(const EmbeddedGraph& g, int face, int shift) {
    const auto& fw = g.faces().at(face);
    if (fw.is_hole || fw.vertices.size() != 4) throw GraphError("face is not a non-hole 4-face");
    Faces faces = face_list(g);
    const auto& w = fw.vertices;
    int a = w[shift % 4], b = w[(shift + 1) % 4], c = w[(shift + 2) % 4], d = w[(shift + 3) % 4];
    int x = g.n();
    faces[face] = {a, b, c, x};
    faces.push_back({c, d, a, x});
    return from_faces(g.n() + 1, faces, g.rings(), g.surface());
}

EmbeddedGraph random_quad_splits(const EmbeddedGraph& g, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EmbeddedGraph cur = g;
    for (int k = 0; k < count; ++k) {
        std::vector<int> quads;
        for (size_t f = 0; f < cur.faces().size(); ++f)
            if (!cur.faces()[f].is_hole && cur.faces()[f].vertices.size() == 4) quads.push_back(static_cast<int>(f));
        if (quads.empty()) break;
        int f = quads[std::uniform_int_distribution<size_t>(0, quads.size() - 1)(rng)];
        int shift = static_cast<int>(rng() % 2);
        cur = split_quad_face(cur, f, shift);
    }
    return cur;
}

EmbeddedGraph subdivide_edge(const EmbeddedGraph& g, int u, int v) {
    if (!g.adjacent(u, v)) throw GraphError("no such edge");
    int s = g.n();
    auto insert = [&](std::vector<int>& walk) {
        std::vector<int> out;
        int m = static_cast<int>(walk.size());
        for (int i = 0; i < m; ++i) {
            out.push_back(walk[i]);
            int a = walk[i], b = walk[(i + 1) % m];
            if ((a == u && b == v) || (a == v && b == u)) out.push_back(s);
        }
        walk = out;
    };
    Faces faces = face_list(g);
    for (auto& f : faces) insert(f);
    std::vector<Cycle> rings = g.rings();
    for (auto& r : rings) insert(r);
    return from_faces(g.n() + 1, faces, rings, g.surface());
}

bool is_quadrangulation(const EmbeddedGraph& g) {
    if (g.rings().size() != 2) return false;
    return has_face_length_profile(g, 4);
}

bool is_33_quadrangulation(const EmbeddedGraph& g) {
    if (g.surface() != Surface::cylinder) return false;
    for (const auto& r : g.rings())
        if (r.size() != 3) return false;
    return has_face_length_profile(g, 4);
}

namespace {

// Removes the degree-2 ring vertex s, joining its neighbors.
std::optional<EmbeddedGraph> smooth(const EmbeddedGraph& g, int s) {
    if (g.degree(s) != 2) return std::nullopt;
    int a = g.rotation(s)[0], b = g.rotation(s)[1];
    if (g.adjacent(a, b)) return std::nullopt;
    std::vector<int> map(g.n());
    for (int x = 0, id = 0; x < g.n(); ++x) map[x] = x == s ? -1 : id++;
    Faces faces;
    for (auto f : face_list(g)) {
        f.erase(std::remove(f.begin(), f.end(), s), f.end());
        faces.push_back(remap_cycle(f, map));
    }
    std::vector<Cycle> rings;
    for (auto r : g.rings()) {
        r.erase(std::remove(r.begin(), r.end(), s), r.end());
        rings.push_back(remap_cycle(r, map));
    }
    try {
        return from_faces(g.n() - 1, faces, rings, g.surface());
    } catch (const GraphError&) {
        return std::nullopt;
    }
}

bool near_33_rec(const EmbeddedGraph& g, size_t ring) {
    if (ring == g.rings().size()) return is_33_quadrangulation(g);
    const Cycle& c = g.rings()[ring];
    if (c.size() == 3) return near_33_rec(g, ring + 1);
    if (c.size() != 4) return false;
    for (int s : c) {
        // the face across the ring from s must have length 5
        int k = static_cast<int>(std::find(c.begin(), c.end(), s) - c.begin());
        int nxt = c[(k + 1) % 4];
        int other = g.face_of_dart(nxt, s);
        if (g.faces()[other].is_hole || g.faces()[other].vertices.size() != 5) continue;
        auto h = smooth(g, s);
        if (h && near_33_rec(*h, ring + 1)) return true;
    }
    return false;
}

}  // namespace

bool is_near_33_quadrangulation(const EmbeddedGraph& g) {
    if (g.surface() != Surface::cylinder || g.rings().size() != 2) return false;
    for (const auto& f : g.faces()) {
        if (f.is_hole) continue;
        if (f.vertices.size() != 4 && f.vertices.size() != 5) return false;
    }
    return near_33_rec(g, 0);
}

FamilyGraph near_33_quadrangulation(const EmbeddedGraph& base, const std::vector<Edge>& subdivide) {
    if (!is_33_quadrangulation(base)) throw GraphError("base is not a 3,3-quadrangulation");
    std::vector<int> used(2, 0);
    EmbeddedGraph g = base;
    for (auto [u, v] : subdivide) {
        int which = -1;
        for (int r = 0; r < 2; ++r) {
            const Cycle& c = base.rings()[r];
            for (int i = 0; i < 3; ++i) {
                int a = c[i], b = c[(i + 1) % 3];
                if ((a == u && b == v) || (a == v && b == u)) which = r;
            }
        }
        if (which < 0) throw GraphError("edge is not on a ring");
        if (++used[which] > 1) throw GraphError("at most one edge per ring may be subdivided");
        g = subdivide_edge(g, u, v);
    }
    FamilyGraph out{g, {}};
    out.meta.family = "near-33-quadrangulation";
    for (const auto& r : g.rings()) out.meta.rings.push_back(RingInfo{r, false, false});
    return out;
}

}  // namespace cylcol
