#include "cylcol/embedding.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace cylcol {

std::string to_string(Surface s) {
    switch (s) {
        case Surface::sphere: return "sphere";
        case Surface::disk: return "disk";
        case Surface::cylinder: return "cylinder";
    }
    return "?";
}

Surface parse_surface(const std::string& name) {
    if (name == "sphere") return Surface::sphere;
    if (name == "disk") return Surface::disk;
    if (name == "cylinder") return Surface::cylinder;
    throw GraphError("unknown surface '" + name + "'");
}

int hole_count(Surface s) {
    switch (s) {
        case Surface::sphere: return 0;
        case Surface::disk: return 1;
        case Surface::cylinder: return 2;
    }
    return 0;
}

namespace {

int index_of(const std::vector<int>& xs, int x) {
    for (size_t i = 0; i < xs.size(); ++i)
        if (xs[i] == x) return static_cast<int>(i);
    return -1;
}

bool same_cyclic(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size() || a.empty()) return false;
    int start = index_of(a, b[0]);
    if (start < 0) return false;
    for (size_t i = 0; i < b.size(); ++i)
        if (a[(start + i) % a.size()] != b[i]) return false;
    return true;
}

}  // namespace

bool EmbeddedGraph::adjacent(int u, int v) const {
    if (u < 0 || v < 0 || u >= n() || v >= n()) return false;
    const auto& s = sorted_[u];
    return std::binary_search(s.begin(), s.end(), v);
}

std::vector<Edge> EmbeddedGraph::edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n(); ++u)
        for (int v : sorted_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int EmbeddedGraph::face_of_dart(int u, int v) const {
    int i = index_of(rot_.at(u), v);
    if (i < 0) throw GraphError("no edge " + std::to_string(u) + "-" + std::to_string(v));
    return dart_face_[u][i];
}

std::vector<int> EmbeddedGraph::ring_vertices() const {
    std::set<int> s;
    for (const auto& r : rings_) s.insert(r.begin(), r.end());
    return {s.begin(), s.end()};
}

bool EmbeddedGraph::on_ring(int v) const {
    for (const auto& r : rings_)
        if (index_of(r, v) >= 0) return true;
    return false;
}

bool EmbeddedGraph::is_ring_edge(int u, int v) const {
    for (const auto& r : rings_) {
        int k = static_cast<int>(r.size());
        for (int i = 0; i < k; ++i) {
            int a = r[i], b = r[(i + 1) % k];
            if ((a == u && b == v) || (a == v && b == u)) return true;
        }
    }
    return false;
}

bool EmbeddedGraph::equals_rings() const {
    for (int v = 0; v < n(); ++v)
        if (!on_ring(v)) return false;
    for (auto [u, v] : edges())
        if (!is_ring_edge(u, v)) return false;
    return true;
}

EmbeddedGraph build_graph(int n, std::vector<std::vector<int>> rotations, std::vector<Cycle> rings,
                          Surface surface) {
    if (n < 1) throw GraphError("graph needs at least one vertex");
    if (static_cast<int>(rotations.size()) != n) throw GraphError("rotation count differs from vertex count");
    EmbeddedGraph g;
    g.surface_ = surface;
    int darts = 0;
    for (int u = 0; u < n; ++u) {
        std::set<int> seen;
        for (int v : rotations[u]) {
            if (v < 0 || v >= n) throw GraphError("neighbor id out of range at vertex " + std::to_string(u));
            if (v == u) throw GraphError("loop at vertex " + std::to_string(u));
            if (!seen.insert(v).second)
                throw GraphError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
        }
        darts += static_cast<int>(rotations[u].size());
    }
    for (int u = 0; u < n; ++u)
        for (int v : rotations[u])
            if (index_of(rotations[v], u) < 0)
                throw GraphError("asymmetric rotation: " + std::to_string(u) + " lists " + std::to_string(v) +
                                 " but not vice versa");
    g.rot_ = std::move(rotations);
    g.num_edges_ = darts / 2;
    g.sorted_ = g.rot_;
    for (auto& s : g.sorted_) std::sort(s.begin(), s.end());

    // connectivity
    std::vector<bool> seen(n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.rot_[u])
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                q.push(v);
            }
    }
    if (reached != n) throw GraphError("graph is disconnected");

    // face tracing
    g.dart_face_.assign(n, {});
    for (int u = 0; u < n; ++u) g.dart_face_[u].assign(g.rot_[u].size(), -1);
    for (int u = 0; u < n; ++u) {
        for (size_t i = 0; i < g.rot_[u].size(); ++i) {
            if (g.dart_face_[u][i] >= 0) continue;
            FaceWalk f;
            int fid = static_cast<int>(g.faces_.size());
            int a = u;
            int ai = static_cast<int>(i);
            while (g.dart_face_[a][ai] < 0) {
                g.dart_face_[a][ai] = fid;
                f.vertices.push_back(a);
                int b = g.rot_[a][ai];
                const auto& rb = g.rot_[b];
                int j = index_of(rb, a);
                int d = static_cast<int>(rb.size());
                a = b;
                ai = (j - 1 + d) % d;
            }
            g.faces_.push_back(std::move(f));
        }
    }
    int faces = g.num_edges_ == 0 ? 1 : static_cast<int>(g.faces_.size());
    if (n - g.num_edges_ + faces != 2)
        throw GraphError("Euler check failed: V-E+F = " + std::to_string(n - g.num_edges_ + faces));

    if (static_cast<int>(rings.size()) != hole_count(surface))
        throw GraphError("surface " + to_string(surface) + " needs " + std::to_string(hole_count(surface)) +
                         " rings, got " + std::to_string(rings.size()));
    g.hole_face_.assign(rings.size(), -1);
    for (size_t r = 0; r < rings.size(); ++r) {
        const Cycle& c = rings[r];
        if (c.size() < 3) throw GraphError("ring shorter than 3");
        std::set<int> distinct(c.begin(), c.end());
        if (distinct.size() != c.size()) throw GraphError("ring repeats a vertex");
        for (size_t i = 0; i < c.size(); ++i) {
            int a = c[i], b = c[(i + 1) % c.size()];
            if (a < 0 || a >= n || !g.adjacent(a, b)) throw GraphError("ring is not a cycle of the graph");
        }
        int found = -1;
        for (size_t f = 0; f < g.faces_.size(); ++f)
            if (same_cyclic(g.faces_[f].vertices, c)) found = static_cast<int>(f);
        if (found < 0) throw GraphError("ring " + std::to_string(r) + " does not trace a face");
        for (size_t s = 0; s < r; ++s)
            if (g.hole_face_[s] == found) throw GraphError("two rings bound the same face");
        g.hole_face_[r] = found;
        g.faces_[found].is_hole = true;
        g.faces_[found].ring = static_cast<int>(r);
    }
    g.rings_ = std::move(rings);
    return g;
}

EmbeddedGraph from_faces(int n, const std::vector<std::vector<int>>& faces, std::vector<Cycle> rings,
                         Surface surface) {
    std::vector<std::map<int, int>> next(n);
    for (const auto& f : faces) {
        int k = static_cast<int>(f.size());
        if (k < 1) throw GraphError("empty face");
        for (int i = 0; i < k; ++i) {
            int a = f[(i - 1 + k) % k], v = f[i], b = f[(i + 1) % k];
            if (v < 0 || v >= n || a < 0 || a >= n || b < 0 || b >= n) throw GraphError("face vertex out of range");
            if (!next[v].emplace(b, a).second)
                throw GraphError("dart used twice around vertex " + std::to_string(v));
        }
    }
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v) {
        if (next[v].empty()) continue;
        int start = next[v].begin()->first;
        int cur = start;
        do {
            rot[v].push_back(cur);
            auto it = next[v].find(cur);
            if (it == next[v].end()) throw GraphError("inconsistent corners at vertex " + std::to_string(v));
            cur = it->second;
            if (rot[v].size() > next[v].size()) throw GraphError("corner cycle overflow at " + std::to_string(v));
        } while (cur != start);
        if (rot[v].size() != next[v].size())
            throw GraphError("vertex " + std::to_string(v) + " has a pinched neighbourhood");
    }
    return build_graph(n, std::move(rot), std::move(rings), surface);
}

EmbeddedGraph from_unoriented_faces(int n, std::vector<std::vector<int>> faces,
                                    const std::vector<int>& hole_faces, Surface surface) {
    std::vector<int> firsts;
    for (int h : hole_faces) firsts.push_back(faces.at(h).at(0));
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (size_t f = 0; f < faces.size(); ++f) {
        int k = static_cast<int>(faces[f].size());
        for (int i = 0; i < k; ++i) {
            int a = faces[f][i], b = faces[f][(i + 1) % k];
            by_edge[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
        }
    }
    auto has_dart = [&](int f, int a, int b) {
        int k = static_cast<int>(faces[f].size());
        for (int i = 0; i < k; ++i)
            if (faces[f][i] == a && faces[f][(i + 1) % k] == b) return true;
        return false;
    };
    std::vector<int> state(faces.size(), 0);
    for (size_t root = 0; root < faces.size(); ++root) {
        if (state[root]) continue;
        state[root] = 1;
        std::queue<int> q;
        q.push(static_cast<int>(root));
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            int k = static_cast<int>(faces[f].size());
            for (int i = 0; i < k; ++i) {
                int a = faces[f][i], b = faces[f][(i + 1) % k];
                for (int g : by_edge[{std::min(a, b), std::max(a, b)}]) {
                    if (g == f) continue;
                    bool same_dir = has_dart(g, a, b);
                    if (!state[g]) {
                        if (same_dir) std::reverse(faces[g].begin(), faces[g].end());
                        state[g] = 1;
                        q.push(g);
                    } else if (same_dir) {
                        throw GraphError("faces cannot be oriented consistently");
                    }
                }
            }
        }
    }
    std::vector<Cycle> rings;
    for (size_t i = 0; i < hole_faces.size(); ++i) {
        Cycle c = faces[hole_faces[i]];
        auto it = std::find(c.begin(), c.end(), firsts[i]);
        std::rotate(c.begin(), it, c.end());
        rings.push_back(c);
    }
    return from_faces(n, faces, std::move(rings), surface);
}

std::vector<std::vector<int>> face_list(const EmbeddedGraph& g) {
    std::vector<std::vector<int>> out;
    for (const auto& f : g.faces()) out.push_back(f.vertices);
    return out;
}

std::vector<FaceWalk> trace_faces(const EmbeddedGraph& g) { return g.faces(); }

EmbeddedGraph mirror(const EmbeddedGraph& g) {
    auto rot = g.rotations();
    for (auto& r : rot) std::reverse(r.begin(), r.end());
    std::vector<Cycle> rings;
    for (const auto& r : g.rings()) {
        Cycle c{r[0]};
        for (size_t i = r.size() - 1; i >= 1; --i) c.push_back(r[i]);
        rings.push_back(c);
    }
    return build_graph(g.n(), std::move(rot), std::move(rings), g.surface());
}

EmbeddedGraph induced_restriction(const EmbeddedGraph& g, const std::vector<int>& keep,
                                  const std::vector<Edge>& removed_edges, std::vector<Cycle> rings) {
    std::vector<int> id(g.n(), -1);
    for (size_t i = 0; i < keep.size(); ++i) id[keep[i]] = static_cast<int>(i);
    std::set<Edge> removed;
    for (auto [u, v] : removed_edges) removed.insert({std::min(u, v), std::max(u, v)});
    std::vector<std::vector<int>> rot(keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        for (int w : g.rotation(keep[i])) {
            if (id[w] < 0) continue;
            if (removed.count({std::min(keep[i], w), std::max(keep[i], w)})) continue;
            rot[i].push_back(id[w]);
        }
    return build_graph(static_cast<int>(keep.size()), std::move(rot), std::move(rings), g.surface());
}

bool is_cycle(const EmbeddedGraph& g, const Cycle& c) {
    if (c.size() < 3) return false;
    std::set<int> s(c.begin(), c.end());
    if (s.size() != c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return false;
    return true;
}

Cycle canonical_cycle(const Cycle& c) {
    Cycle best = c;
    int k = static_cast<int>(c.size());
    for (int dir = 0; dir < 2; ++dir) {
        for (int s = 0; s < k; ++s) {
            Cycle cand(k);
            for (int i = 0; i < k; ++i) cand[i] = dir == 0 ? c[(s + i) % k] : c[((s - i) % k + k) % k];
            if (cand < best) best = cand;
        }
    }
    return best;
}

std::vector<bool> dart_side(const EmbeddedGraph& g, const Cycle& c) {
    if (!is_cycle(g, c)) throw GraphError("not a cycle of the graph");
    std::set<Edge> cut;
    int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i) {
        int a = c[i], b = c[(i + 1) % k];
        cut.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<bool> side(g.faces().size(), false);
    std::queue<int> q;
    for (int i = 0; i < k; ++i) {
        int f = g.face_of_dart(c[i], c[(i + 1) % k]);
        if (!side[f]) {
            side[f] = true;
            q.push(f);
        }
    }
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        const auto& w = g.faces()[f].vertices;
        int m = static_cast<int>(w.size());
        for (int i = 0; i < m; ++i) {
            int a = w[i], b = w[(i + 1) % m];
            if (cut.count({std::min(a, b), std::max(a, b)})) continue;
            int h = g.face_of_dart(b, a);
            if (!side[h]) {
                side[h] = true;
                q.push(h);
            }
        }
    }
    return side;
}

bool is_contractible(const EmbeddedGraph& g, const Cycle& c) {
    if (!is_cycle(g, c)) throw GraphError("not a cycle of the graph");
    if (g.surface() != Surface::cylinder) return true;
    auto side = dart_side(g, c);
    return side[g.hole_face(0)] == side[g.hole_face(1)];
}

bool is_positive(const EmbeddedGraph& g, const Cycle& c) {
    if (g.surface() != Surface::cylinder) throw GraphError("orientation needs a cylinder");
    auto side = dart_side(g, c);
    if (side[g.hole_face(0)] == side[g.hole_face(1)]) throw GraphError("cycle is contractible");
    return side[g.hole_face(0)];
}

Cycle positive_orientation(const EmbeddedGraph& g, const Cycle& c) {
    if (is_positive(g, c)) return c;
    Cycle r{c[0]};
    for (size_t i = c.size() - 1; i >= 1; --i) r.push_back(c[i]);
    return r;
}

std::vector<std::array<int, 3>> triangles(const EmbeddedGraph& g) {
    std::vector<std::array<int, 3>> out;
    for (int u = 0; u < g.n(); ++u)
        for (int v : g.neighbors_sorted(u)) {
            if (v <= u) continue;
            for (int w : g.neighbors_sorted(v))
                if (w > v && g.adjacent(u, w)) out.push_back({u, v, w});
        }
    return out;
}

bool is_tame(const EmbeddedGraph& g) {
    auto ts = triangles(g);
    for (const auto& t : ts)
        if (is_contractible(g, {t[0], t[1], t[2]})) return false;
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j)
            for (int a : ts[i])
                for (int b : ts[j])
                    if (a == b) return false;
    return true;
}

int cycle_distance(const EmbeddedGraph& g, const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty() || b.empty()) throw GraphError("empty vertex set");
    std::vector<int> dist(g.n(), -1);
    std::queue<int> q;
    for (int v : a)
        if (dist[v] < 0) {
            dist[v] = 0;
            q.push(v);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.rotation(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    int best = -1;
    for (int v : b)
        if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
    return best;
}

std::vector<Cycle> short_cycles(const EmbeddedGraph& g, int max_len) {
    std::set<Cycle> found;
    std::vector<int> path;
    std::vector<bool> used(g.n(), false);
    auto dfs = [&](auto&& self, int s, int u) -> void {
        for (int w : g.neighbors_sorted(u)) {
            if (w == s && path.size() >= 3) found.insert(canonical_cycle(path));
            if (w <= s || used[w] || static_cast<int>(path.size()) >= max_len) continue;
            used[w] = true;
            path.push_back(w);
            self(self, s, w);
            path.pop_back();
            used[w] = false;
        }
    };
    for (int s = 0; s < g.n(); ++s) {
        path = {s};
        used[s] = true;
        dfs(dfs, s, s);
        used[s] = false;
    }
    return {found.begin(), found.end()};
}

std::vector<Cycle> noncontractible_short_cycles(const EmbeddedGraph& g, int max_len) {
    std::vector<Cycle> out;
    for (const auto& c : short_cycles(g, max_len))
        if (!is_contractible(g, c)) out.push_back(c);
    return out;
}

bool is_face_cycle(const EmbeddedGraph& g, const Cycle& c) {
    Cycle r(c.rbegin(), c.rend());
    for (const auto& f : g.faces())
        if (same_cyclic(f.vertices, c) || same_cyclic(f.vertices, r)) return true;
    return false;
}

std::vector<std::vector<int>> adjacency(const EmbeddedGraph& g) {
    std::vector<std::vector<int>> adj(g.n());
    for (int v = 0; v < g.n(); ++v) adj[v] = g.neighbors_sorted(v);
    return adj;
}

}  // namespace cylcol
