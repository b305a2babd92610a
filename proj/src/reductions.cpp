#include "cylcol/reductions.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "cylcol/families.hpp"
#include "cylcol/io.hpp"

namespace cylcol {

namespace {

using Faces = std::vector<std::vector<int>>;

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> out(first.size(), -1);
    for (size_t i = 0; i < first.size(); ++i)
        if (first[i] >= 0) out[i] = second[first[i]];
    return out;
}

Cycle remap(const Cycle& c, const std::vector<int>& map) {
    Cycle out;
    for (int v : c) out.push_back(map.at(v));
    return out;
}

Cycle reversed_keep_first(const Cycle& c) {
    Cycle r{c[0]};
    for (size_t i = c.size() - 1; i >= 1; --i) r.push_back(c[i]);
    return r;
}

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

bool share_vertex(const Cycle& a, const Cycle& b) {
    for (int x : a)
        if (contains(b, x)) return true;
    return false;
}

bool same_cycle(const Cycle& a, const Cycle& b) { return canonical_cycle(a) == canonical_cycle(b); }

// +1 when list runs along ring in its stored direction, -1 when against it.
int direction_along(const Cycle& list, const Cycle& ring) {
    int k = static_cast<int>(ring.size());
    if (static_cast<int>(list.size()) != k) throw GraphError("gluing list length differs from the ring length");
    auto it = std::find(ring.begin(), ring.end(), list[0]);
    if (it == ring.end()) throw GraphError("gluing list leaves the ring");
    int s = static_cast<int>(it - ring.begin());
    bool fwd = true, bwd = true;
    for (int t = 0; t < k; ++t) {
        if (list[t] != ring[(s + t) % k]) fwd = false;
        if (list[t] != ring[((s - t) % k + k) % k]) bwd = false;
    }
    if (fwd) return 1;
    if (bwd) return -1;
    throw GraphError("gluing list is not the ring in cyclic order");
}

}  // namespace

Reduced pinch(const EmbeddedGraph& g, int u, int v, int face) {
    if (face < 0 || face >= static_cast<int>(g.faces().size())) throw GraphError("face index out of range");
    if (u == v) throw GraphError("cannot merge a vertex with itself");
    if (g.adjacent(u, v)) throw GraphError("merging adjacent vertices would create a loop");
    const auto& w = g.faces()[face].vertices;
    int m = static_cast<int>(w.size());
    if (std::count(w.begin(), w.end(), u) != 1 || std::count(w.begin(), w.end(), v) != 1)
        throw GraphError("both vertices must appear once on the face");
    int iu = static_cast<int>(std::find(w.begin(), w.end(), u) - w.begin());
    int iv = static_cast<int>(std::find(w.begin(), w.end(), v) - w.begin());
    int a = w[(iu - 1 + m) % m], c = w[(iv - 1 + m) % m];

    int n = g.n();
    std::map<Edge, int> eid;
    for (auto [x, y] : g.edges()) eid[{x, y}] = static_cast<int>(eid.size());
    auto id_of = [&](int x, int y) { return eid.at({std::min(x, y), std::max(x, y)}); };
    std::vector<std::vector<std::pair<int, int>>> rot(n);
    for (int x = 0; x < n; ++x)
        for (int y : g.rotation(x)) rot[x].emplace_back(y, id_of(x, y));

    auto rotated_from = [&](int x, int start) {
        auto r = rot[x];
        auto it = std::find_if(r.begin(), r.end(), [&](const auto& e) { return e.first == start; });
        std::rotate(r.begin(), it, r.end());
        return r;
    };
    auto merged = rotated_from(u, a);
    auto rv = rotated_from(v, c);
    merged.insert(merged.end(), rv.begin(), rv.end());

    int keep = std::min(u, v), drop = std::max(u, v);
    std::set<int> seen, dropped;
    std::vector<std::pair<int, int>> deduped;
    for (auto [y, e] : merged) {
        if (seen.insert(y).second)
            deduped.push_back({y, e});
        else
            dropped.insert(e);
    }
    for (int x = 0; x < n; ++x) {
        if (x == u || x == v) continue;
        std::vector<std::pair<int, int>> r;
        for (auto [y, e] : rot[x]) {
            if (dropped.count(e)) continue;
            r.push_back({y == drop ? keep : y, e});
        }
        rot[x] = r;
    }
    rot[keep] = deduped;
    rot[drop].clear();

    std::vector<int> map(n);
    for (int x = 0, id = 0; x < n; ++x) map[x] = x == drop ? -1 : id++;
    map[drop] = map[keep];
    std::vector<std::vector<int>> out(n - 1);
    for (int x = 0; x < n; ++x) {
        if (x == drop) continue;
        for (auto [y, e] : rot[x]) out[map[x]].push_back(map[y]);
    }
    std::vector<Cycle> rings;
    for (const auto& r : g.rings()) {
        Cycle c2 = remap(r, map);
        std::set<int> s(c2.begin(), c2.end());
        if (s.size() != c2.size()) throw GraphError("merge collapses a ring");
        rings.push_back(c2);
    }
    return {build_graph(n - 1, std::move(out), std::move(rings), g.surface()), map};
}

Reduced identify(const EmbeddedGraph& g, int x1, int x3, int face) {
    if (face < 0 || face >= static_cast<int>(g.faces().size())) throw GraphError("face index out of range");
    const auto& f = g.faces()[face];
    if (f.is_hole || f.vertices.size() != 4) throw GraphError("identification needs a 4-face");
    const auto& w = f.vertices;
    auto it = std::find(w.begin(), w.end(), x1);
    if (it == w.end() || w[(it - w.begin() + 2) % 4] != x3) throw GraphError("vertices are not opposite on the face");
    return pinch(g, x1, x3, face);
}

std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> touching_triangles(const EmbeddedGraph& g) {
    std::vector<std::array<int, 3>> nc;
    for (const auto& t : triangles(g))
        if (g.surface() == Surface::cylinder && !is_contractible(g, {t[0], t[1], t[2]})) nc.push_back(t);
    std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> out;
    for (size_t i = 0; i < nc.size(); ++i)
        for (size_t j = i + 1; j < nc.size(); ++j) {
            int shared = 0;
            for (int a : nc[i])
                for (int b : nc[j])
                    if (a == b) ++shared;
            if (shared == 1) out.push_back({nc[i], nc[j]});
        }
    return out;
}

Reduced collapse_triangles(const EmbeddedGraph& g, const std::array<int, 3>& ty_in, const std::array<int, 3>& tz_in) {
    if (g.surface() != Surface::cylinder) throw GraphError("collapsing needs a cylinder");
    std::vector<int> shared;
    for (int a : ty_in)
        for (int b : tz_in)
            if (a == b) shared.push_back(a);
    if (std::set<int>(ty_in.begin(), ty_in.end()) == std::set<int>(tz_in.begin(), tz_in.end())) {
        std::vector<int> id(g.n());
        for (int i = 0; i < g.n(); ++i) id[i] = i;
        return {g, id};
    }
    if (shared.size() != 1) throw GraphError("triangles must share exactly one vertex");
    int x = shared[0];
    auto normalize = [&](const std::array<int, 3>& t) {
        Cycle c(t.begin(), t.end());
        if (!is_cycle(g, c)) throw GraphError("not a triangle of the graph");
        if (is_contractible(g, c)) throw GraphError("collapsing needs non-contractible triangles");
        c = positive_orientation(g, c);
        std::rotate(c.begin(), std::find(c.begin(), c.end(), x), c.end());
        return c;
    };
    Cycle ty = normalize(ty_in), tz = normalize(tz_in);
    int y1 = ty[1], y2 = ty[2], z1 = tz[1], z2 = tz[2];

    std::set<Edge> cut;
    for (const Cycle* t : {&ty, &tz})
        for (int i = 0; i < 3; ++i) {
            int a = (*t)[i], b = (*t)[(i + 1) % 3];
            cut.insert({std::min(a, b), std::max(a, b)});
        }
    std::vector<bool> reached(g.faces().size(), false);
    std::queue<int> q;
    for (int h = 0; h < 2; ++h) {
        reached[g.hole_face(h)] = true;
        q.push(g.hole_face(h));
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
            if (!reached[h]) {
                reached[h] = true;
                q.push(h);
            }
        }
    }
    std::set<int> keep_set;
    std::set<Edge> kept_edges;
    for (size_t f = 0; f < reached.size(); ++f) {
        if (!reached[f]) continue;
        const auto& w = g.faces()[f].vertices;
        for (size_t i = 0; i < w.size(); ++i) {
            keep_set.insert(w[i]);
            int a = w[i], b = w[(i + 1) % w.size()];
            kept_edges.insert({std::min(a, b), std::max(a, b)});
        }
    }
    std::vector<int> keep(keep_set.begin(), keep_set.end());
    std::vector<Edge> removed;
    for (auto e : g.edges())
        if (!kept_edges.count(e)) removed.push_back(e);
    std::vector<int> map1(g.n(), -1);
    for (size_t i = 0; i < keep.size(); ++i) map1[keep[i]] = static_cast<int>(i);
    std::vector<Cycle> rings;
    for (const auto& r : g.rings()) rings.push_back(remap(r, map1));
    EmbeddedGraph h = induced_restriction(g, keep, removed, rings);

    int hx = map1[x], hy1 = map1[y1], hy2 = map1[y2], hz1 = map1[z1], hz2 = map1[z2];
    int between = -1;
    for (size_t f = 0; f < h.faces().size(); ++f) {
        const auto& w = h.faces()[f].vertices;
        if (w.size() == 6 && std::count(w.begin(), w.end(), hx) == 2 && contains(w, hy1) && contains(w, hy2) &&
            contains(w, hz1) && contains(w, hz2))
            between = static_cast<int>(f);
    }
    if (between < 0) throw GraphError("triangles do not bound a common region");
    const auto& w = h.faces()[between].vertices;
    std::set<std::set<int>> corners;
    for (int i = 0; i < 6; ++i)
        if (w[i] == hx) corners.insert({w[(i + 5) % 6], w[(i + 1) % 6]});
    if (corners != std::set<std::set<int>>{{hy1, hz1}, {hy2, hz2}})
        throw GraphError("triangle orientation mismatch");

    Reduced first = pinch(h, hy1, hz1, between);
    int a = first.vertex_map[hy2], b = first.vertex_map[hz2];
    int face2 = -1;
    for (size_t f = 0; f < first.graph.faces().size(); ++f) {
        const auto& fw = first.graph.faces()[f].vertices;
        if (std::count(fw.begin(), fw.end(), a) == 1 && std::count(fw.begin(), fw.end(), b) == 1 && fw.size() == 4)
            face2 = static_cast<int>(f);
    }
    if (face2 < 0) throw GraphError("no face joins the second pair");
    Reduced second = pinch(first.graph, a, b, face2);
    return {second.graph, compose(compose(map1, first.vertex_map), second.vertex_map)};
}

std::string chain_violation(const EmbeddedGraph& g, const std::vector<Cycle>& cycles) {
    if (g.surface() != Surface::cylinder) return "graph is not in the cylinder";
    if (cycles.size() < 2) return "need at least two cutting cycles";
    if (!is_tame(g)) return "graph is not tame";
    size_t n = cycles.size() - 1;
    if (!same_cycle(cycles[0], g.rings()[0]) || !same_cycle(cycles[n], g.rings()[1]))
        return "first and last cutting cycles must be the rings";
    std::vector<std::vector<bool>> side;
    for (const auto& c : cycles) {
        if (c.size() > 4 || !is_cycle(g, c)) return "cutting cycle is not a cycle of length at most 4";
        if (is_contractible(g, c)) return "cutting cycle is contractible";
        side.push_back(dart_side(g, positive_orientation(g, c)));
    }
    for (size_t i = 0; i <= n; ++i)
        for (size_t j = i + 1; j <= n; ++j) {
            if (!share_vertex(cycles[i], cycles[j])) continue;
            bool ok = (i == 0 && j == 1 && cycles[0].size() == 4 && cycles[1].size() == 3) ||
                      (i == n - 1 && j == n && cycles[n].size() == 4 && cycles[n - 1].size() == 3);
            if (!ok) return "cutting cycles intersect";
        }
    for (size_t i = 0; i < n; ++i) {
        bool strict = false;
        for (size_t f = 0; f < side[i].size(); ++f) {
            if (side[i][f] && !side[i + 1][f]) return "cutting cycles are not nested";
            if (!side[i][f] && side[i + 1][f]) strict = true;
        }
        if (!strict) return "consecutive cutting cycles bound nothing between them";
    }
    for (const auto& t : triangles(g)) {
        Cycle tc = {t[0], t[1], t[2]};
        bool listed = false;
        for (const auto& c : cycles)
            if (same_cycle(c, tc)) listed = true;
        if (!listed) return "a triangle is not a cutting cycle";
    }
    return "";
}

Chain chain_from_cycles(const EmbeddedGraph& g, const std::vector<Cycle>& cycles_in) {
    std::string why = chain_violation(g, cycles_in);
    if (!why.empty()) throw GraphError("invalid chain: " + why);
    Chain ch;
    ch.graph = g;
    std::vector<std::vector<bool>> side;
    for (const auto& c : cycles_in) {
        Cycle p = positive_orientation(g, c);
        ch.cutting_cycles.push_back(p);
        side.push_back(dart_side(g, p));
    }
    for (size_t i = 0; i + 1 < cycles_in.size(); ++i) {
        std::set<int> verts;
        std::vector<int> fids;
        for (size_t f = 0; f < g.faces().size(); ++f)
            if (side[i + 1][f] && !side[i][f]) {
                fids.push_back(static_cast<int>(f));
                for (int v : g.faces()[f].vertices) verts.insert(v);
            }
        const Cycle& lo = ch.cutting_cycles[i];
        const Cycle& hi = ch.cutting_cycles[i + 1];
        verts.insert(lo.begin(), lo.end());
        verts.insert(hi.begin(), hi.end());
        std::vector<int> pv(verts.begin(), verts.end());
        std::vector<int> local(g.n(), -1);
        for (size_t k = 0; k < pv.size(); ++k) local[pv[k]] = static_cast<int>(k);
        Faces faces;
        for (int f : fids) faces.push_back(remap(g.faces()[f].vertices, local));
        Cycle r1 = remap(lo, local), r2 = reversed_keep_first(remap(hi, local));
        faces.push_back(r1);
        faces.push_back(r2);
        EmbeddedGraph piece = from_faces(static_cast<int>(pv.size()), faces, {r1, r2}, Surface::cylinder);
        ch.quad_flags.push_back(is_quadrangulation(piece));
        ch.pieces.push_back(std::move(piece));
        ch.piece_vertices.push_back(pv);
    }
    return ch;
}

Chain build_chain(const ChainSpec& spec) {
    if (spec.pieces.empty()) throw GraphError("chain needs at least one piece");
    if (spec.gluings.size() + 1 != spec.pieces.size()) throw GraphError("need one gluing between consecutive pieces");
    for (const auto& p : spec.pieces)
        if (p.surface() != Surface::cylinder || p.rings().size() != 2) throw GraphError("pieces must be cylinder graphs");
    std::vector<EmbeddedGraph> pieces = spec.pieces;
    std::vector<std::vector<int>> maps;
    maps.emplace_back(pieces[0].n());
    for (int v = 0; v < pieces[0].n(); ++v) maps[0][v] = v;
    int next = pieces[0].n();
    for (size_t i = 0; i + 1 < pieces.size(); ++i) {
        const Gluing& gl = spec.gluings[i];
        const EmbeddedGraph& a = pieces[i];
        int da = direction_along(gl.from, a.rings()[1]);
        int db = direction_along(gl.to, pieces[i + 1].rings()[0]);
        // glued rings must be traced in opposite directions
        if (da == db) pieces[i + 1] = mirror(pieces[i + 1]);
        const EmbeddedGraph& b = pieces[i + 1];
        std::vector<int> mb(b.n(), -1);
        for (size_t t = 0; t < gl.to.size(); ++t) mb[gl.to[t]] = maps[i].at(gl.from[t]);
        for (int v = 0; v < b.n(); ++v)
            if (mb[v] < 0) mb[v] = next++;
        maps.push_back(mb);
    }
    Faces faces;
    for (size_t i = 0; i < pieces.size(); ++i)
        for (const auto& f : pieces[i].faces())
            if (!f.is_hole) faces.push_back(remap(f.vertices, maps[i]));
    Cycle r1 = remap(pieces.front().rings()[0], maps.front());
    Cycle r2 = remap(pieces.back().rings()[1], maps.back());
    faces.push_back(r1);
    faces.push_back(r2);
    EmbeddedGraph g = from_faces(next, faces, {r1, r2}, Surface::cylinder);
    std::vector<Cycle> cycles = {r1};
    for (size_t i = 0; i + 1 < pieces.size(); ++i) cycles.push_back(remap(pieces[i].rings()[1], maps[i]));
    cycles.push_back(r2);
    Chain ch = chain_from_cycles(g, cycles);
    ch.spec_maps = maps;
    return ch;
}

EmbeddedGraph glue_chain(const ChainSpec& spec) { return build_chain(spec).graph; }

std::optional<Chain> decompose_chain(const EmbeddedGraph& g) {
    if (g.surface() != Surface::cylinder || !is_tame(g)) return std::nullopt;
    for (const auto& r : g.rings())
        if (r.size() > 4) return std::nullopt;
    auto cands = noncontractible_short_cycles(g, 4);
    int k = static_cast<int>(cands.size());
    std::vector<std::vector<bool>> side(k);
    std::vector<int> size(k, 0);
    int s = -1, t = -1;
    for (int i = 0; i < k; ++i) {
        side[i] = dart_side(g, positive_orientation(g, cands[i]));
        size[i] = static_cast<int>(std::count(side[i].begin(), side[i].end(), true));
        if (same_cycle(cands[i], g.rings()[0])) s = i;
        if (same_cycle(cands[i], g.rings()[1])) t = i;
    }
    if (s < 0 || t < 0 || s == t) return std::nullopt;
    auto below = [&](int a, int b) {
        if (size[a] >= size[b]) return false;
        for (size_t f = 0; f < side[a].size(); ++f)
            if (side[a][f] && !side[b][f]) return false;
        return true;
    };
    std::vector<bool> is_tri(k);
    for (int i = 0; i < k; ++i) is_tri[i] = cands[i].size() == 3;
    auto edge_ok = [&](int a, int b) {
        if (!below(a, b)) return false;
        if (share_vertex(cands[a], cands[b])) {
            bool ok = (a == s && cands[a].size() == 4 && is_tri[b]) || (b == t && cands[b].size() == 4 && is_tri[a]);
            if (!ok) return false;
        }
        for (int c = 0; c < k; ++c)
            if (is_tri[c] && c != a && c != b && below(a, c) && below(c, b)) return false;
        return true;
    };
    std::vector<int> order(k);
    for (int i = 0; i < k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return size[a] < size[b]; });
    std::vector<int> best(k, -1), prev(k, -1);
    best[s] = 0;
    for (int b : order)
        for (int a : order) {
            if (best[a] < 0 || !edge_ok(a, b)) continue;
            if (best[a] + 1 > best[b]) {
                best[b] = best[a] + 1;
                prev[b] = a;
            }
        }
    if (best[t] < 1) return std::nullopt;
    std::vector<Cycle> cycles;
    for (int c = t; c >= 0; c = prev[c]) cycles.push_back(cands[c]);
    std::reverse(cycles.begin(), cycles.end());
    if (!chain_violation(g, cycles).empty()) return std::nullopt;
    return chain_from_cycles(g, cycles);
}

int r_count(const Chain& chain) {
    return static_cast<int>(std::count(chain.quad_flags.begin(), chain.quad_flags.end(), false));
}

std::vector<int> special_vertices(const Chain& chain) {
    std::set<int> s;
    for (const auto& c : chain.cutting_cycles) s.insert(c.begin(), c.end());
    return {s.begin(), s.end()};
}

bool legal_identification(const Chain& chain, int piece, const Cycle& face) {
    if (piece < 0 || piece >= static_cast<int>(chain.pieces.size())) throw GraphError("piece index out of range");
    if (face.size() != 4 || !is_cycle(chain.graph, face) || !is_face_cycle(chain.graph, face))
        throw GraphError("not a 4-face of the chain");
    const auto& pv = chain.piece_vertices[piece];
    std::vector<int> local(chain.graph.n(), -1);
    for (size_t i = 0; i < pv.size(); ++i) local[pv[i]] = static_cast<int>(i);
    for (int v : face)
        if (local[v] < 0) throw GraphError("face is not in the piece");
    int x1 = face[0], x3 = face[2];
    auto sp = special_vertices(chain);
    int specials = static_cast<int>(contains(sp, x1)) + static_cast<int>(contains(sp, x3));
    if (specials > 1) return false;
    const EmbeddedGraph& p = chain.pieces[piece];
    int a = local[x1], b = local[x3];
    const Cycle& lo = p.rings()[0];
    const Cycle& hi = p.rings()[1];
    bool hits_lo = false, hits_hi = false;
    for (int z1 : p.neighbors_sorted(a))
        for (int z2 : p.neighbors_sorted(z1)) {
            if (z1 == b || z2 == a || z2 == b || z2 == z1 || !p.adjacent(z2, b)) continue;
            Cycle path = {a, z1, z2, b};
            for (int v : path) {
                if (contains(lo, v)) hits_lo = true;
                if (contains(hi, v)) hits_hi = true;
            }
        }
    return !(hits_lo && hits_hi);
}

std::optional<bool> is_quadrangulated(const EmbeddedGraph& g, int max_vertices, int max_free_edges) {
    if (g.rings().size() != 2) return false;
    int p = static_cast<int>(g.rings()[0].size()), q = static_cast<int>(g.rings()[1].size());
    if ((p + q) % 2 != 0) return false;
    if (is_quadrangulation(g)) return true;
    if (g.n() > max_vertices) return std::nullopt;
    std::vector<Edge> free_edges;
    for (auto e : g.edges())
        if (!g.is_ring_edge(e.first, e.second)) free_edges.push_back(e);
    int m = static_cast<int>(free_edges.size());
    if (m > max_free_edges) return std::nullopt;
    auto ring_verts = g.ring_vertices();
    int ring_edges_count = static_cast<int>(g.edges().size()) - m;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        // mask marks kept free edges
        std::set<int> verts(ring_verts.begin(), ring_verts.end());
        std::vector<Edge> removed;
        int kept = ring_edges_count;
        for (int i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                verts.insert(free_edges[i].first);
                verts.insert(free_edges[i].second);
                ++kept;
            } else {
                removed.push_back(free_edges[i]);
            }
        }
        // a cylinder quadrangulation has exactly 2V - (p+q)/2 edges
        if (kept != 2 * static_cast<int>(verts.size()) - (p + q) / 2) continue;
        std::vector<int> keep(verts.begin(), verts.end());
        std::vector<int> local(g.n(), -1);
        for (size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
        try {
            auto h = induced_restriction(g, keep, removed, {remap(g.rings()[0], local), remap(g.rings()[1], local)});
            if (is_quadrangulation(h)) return true;
        } catch (const GraphError&) {
        }
    }
    return false;
}

std::vector<char> extendable_flags(const Adjacency& adj, const std::vector<Coloring>& pre, const SolveLimits& limits) {
    std::vector<char> out(pre.size(), 0);
    for (size_t i = 0; i < pre.size(); ++i) {
        if (!is_proper(adj, pre[i])) continue;
        auto r = solve(adj, pre[i], limits);
        if (r.status == SolveStatus::budget_exceeded) throw BudgetExceeded("solver budget exceeded");
        out[i] = r.status == SolveStatus::extends;
    }
    return out;
}

bool dominates(const EmbeddedGraph& h, const EmbeddedGraph& g, const std::vector<int>& map_g_to_h,
               const SolveLimits& limits) {
    if (static_cast<int>(map_g_to_h.size()) != g.n()) throw GraphError("vertex map has the wrong length");
    auto g_ring = g.ring_vertices();
    for (int v : g_ring)
        if (map_g_to_h[v] < 0 || !h.on_ring(map_g_to_h[v]))
            throw GraphError("vertex map does not send rings to rings");
    auto eh = extendable_set(h, limits);
    auto eg = extendable_set(g, limits);
    for (const auto& psi_h : eh.members(h.n())) {
        Coloring psi_g(g.n(), -1);
        for (int v : g_ring) psi_g[v] = psi_h[map_g_to_h[v]];
        if (!eg.contains(psi_g)) return false;
    }
    return true;
}

namespace {

Adjacency without_edge(const Adjacency& adj, int u, int v) {
    Adjacency out = adj;
    out[u].erase(std::remove(out[u].begin(), out[u].end(), v), out[u].end());
    out[v].erase(std::remove(out[v].begin(), out[v].end(), u), out[v].end());
    return out;
}

Adjacency without_vertex(const Adjacency& adj, int v) {
    Adjacency out = adj;
    for (int w : adj[v]) out[w].erase(std::remove(out[w].begin(), out[w].end(), v), out[w].end());
    out[v].clear();
    return out;
}

// True when some currently failing precoloring extends in adj.
bool any_extends(const Adjacency& adj, const std::vector<Coloring>& pre, const std::vector<int>& failing,
                 const SolveLimits& limits) {
    for (int i : failing) {
        if (!is_proper(adj, pre[i])) continue;
        auto r = solve(adj, pre[i], limits);
        if (r.status == SolveStatus::budget_exceeded) throw BudgetExceeded("solver budget exceeded");
        if (r.status == SolveStatus::extends) return true;
    }
    return false;
}

}  // namespace

bool is_critical(const EmbeddedGraph& g, const SolveLimits& limits) {
    if (g.equals_rings()) throw GraphError("graph equals its rings");
    auto adj = adjacency(g);
    auto pre = ring_precolorings(g);
    auto base = extendable_flags(adj, pre, limits);
    std::vector<int> failing;
    for (size_t i = 0; i < base.size(); ++i)
        if (!base[i]) failing.push_back(static_cast<int>(i));
    for (auto [u, v] : g.edges()) {
        if (g.is_ring_edge(u, v)) continue;
        if (!any_extends(without_edge(adj, u, v), pre, failing, limits)) return false;
    }
    for (int v = 0; v < g.n(); ++v) {
        if (g.on_ring(v)) continue;
        if (!any_extends(without_vertex(adj, v), pre, failing, limits)) return false;
    }
    return true;
}

EmbeddedGraph maximal_critical_subgraph(const EmbeddedGraph& g, const SolveLimits& limits) {
    auto adj = adjacency(g);
    auto pre = ring_precolorings(g);
    auto base = extendable_flags(adj, pre, limits);
    std::vector<int> failing;
    for (size_t i = 0; i < base.size(); ++i)
        if (!base[i]) failing.push_back(static_cast<int>(i));
    if (failing.empty()) throw GraphError("every precoloring extends; no critical subgraph exists");
    std::vector<bool> alive(g.n(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [u, v] : g.edges()) {
            if (g.is_ring_edge(u, v) || !contains(adj[u], v)) continue;
            auto trial = without_edge(adj, u, v);
            if (!any_extends(trial, pre, failing, limits)) {
                adj = trial;
                changed = true;
            }
        }
        for (int v = 0; v < g.n(); ++v) {
            if (!alive[v] || g.on_ring(v)) continue;
            auto trial = without_vertex(adj, v);
            if (!any_extends(trial, pre, failing, limits)) {
                adj = trial;
                alive[v] = false;
                changed = true;
            }
        }
    }
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
        if (alive[v] && (g.on_ring(v) || !adj[v].empty())) keep.push_back(v);
    std::vector<int> local(g.n(), -1);
    for (size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
    std::vector<Edge> removed;
    for (auto [u, v] : g.edges())
        if (!contains(adj[u], v)) removed.push_back({u, v});
    std::vector<Cycle> rings;
    for (const auto& r : g.rings()) rings.push_back(remap(r, local));
    try {
        return induced_restriction(g, keep, removed, rings);
    } catch (const GraphError& e) {
        throw GraphError(std::string("critical subgraph is not a valid embedded graph: ") + e.what());
    }
}

ChainFile parse_chain_spec(const std::string& text) {
    ChainFile out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "piece") {
            std::string file;
            if (!(ls >> file)) throw ParseError("line " + std::to_string(line_no) + ": missing piece file");
            out.piece_files.push_back(file);
        } else if (key == "glue") {
            int idx;
            if (!(ls >> idx)) throw ParseError("line " + std::to_string(line_no) + ": missing piece index");
            Gluing gl;
            std::string tok;
            bool rhs = false;
            while (ls >> tok) {
                if (tok == "=") {
                    rhs = true;
                    continue;
                }
                int v;
                try {
                    v = std::stoi(tok);
                } catch (const std::exception&) {
                    throw ParseError("line " + std::to_string(line_no) + ": bad vertex '" + tok + "'");
                }
                (rhs ? gl.to : gl.from).push_back(v);
            }
            if (!rhs || gl.from.empty() || gl.from.size() != gl.to.size())
                throw ParseError("line " + std::to_string(line_no) + ": expected 'glue <i> <list> = <list>'");
            if (idx != static_cast<int>(out.gluings.size()) + 1)
                throw ParseError("line " + std::to_string(line_no) + ": gluings must be listed in order");
            out.gluings.push_back(gl);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown keyword '" + key + "'");
        }
    }
    return out;
}

ChainSpec load_chain_spec(const std::string& path) {
    auto file = parse_chain_spec(read_text_file(path));
    ChainSpec spec;
    auto dir = std::filesystem::path(path).parent_path();
    for (const auto& f : file.piece_files) {
        auto p = std::filesystem::path(f);
        if (p.is_relative()) p = dir / p;
        spec.pieces.push_back(read_graph_file(p.string()));
    }
    spec.gluings = file.gluings;
    return spec;
}

}  // namespace cylcol
