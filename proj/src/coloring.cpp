#include "cylcol/coloring.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <thread>

namespace cylcol {

bool is_proper(const Adjacency& adj, const Coloring& c) {
    for (size_t u = 0; u < adj.size(); ++u) {
        if (c[u] < 0) continue;
        for (int w : adj[u])
            if (c[w] == c[u]) return false;
    }
    return true;
}

namespace {

class Search {
public:
    Search(const Adjacency& adj, std::uint64_t limit) : adj_(adj), n_(static_cast<int>(adj.size())), limit_(limit) {
        dom_.assign(n_, 7);
        col_.assign(n_, -1);
        colored_nbrs_.assign(n_, 0);
    }

    // Returns false if a precolored vertex wipes out a neighbor's domain.
    bool seed(const Coloring& pre) {
        bool ok = true;
        for (int v = 0; v < n_; ++v)
            if (pre[v] >= 0 && !assign(v, pre[v])) ok = false;
        return ok;
    }

    bool find_one() { return rec(nullptr); }
    void find_all(const std::function<bool(const Coloring&)>& visit) { rec(&visit); }

    const std::vector<int>& colors() const { return col_; }
    std::uint64_t nodes() const { return nodes_; }
    bool aborted() const { return aborted_; }

private:
    bool assign(int v, int c) {
        col_[v] = c;
        std::uint8_t bit = static_cast<std::uint8_t>(1u << c);
        bool ok = true;
        for (int w : adj_[v]) {
            ++colored_nbrs_[w];
            if (col_[w] < 0 && (dom_[w] & bit)) {
                trail_.emplace_back(w, dom_[w]);
                dom_[w] &= static_cast<std::uint8_t>(~bit);
                if (dom_[w] == 0) ok = false;
            } else if (col_[w] == c) {
                ok = false;
            }
        }
        return ok;
    }

    void unassign(int v, size_t mark) {
        for (int w : adj_[v]) --colored_nbrs_[w];
        while (trail_.size() > mark) {
            dom_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
        col_[v] = -1;
    }

    int pick() const {
        int best = -1;
        for (int v = 0; v < n_; ++v) {
            if (col_[v] >= 0) continue;
            if (best < 0) {
                best = v;
                continue;
            }
            int dv = std::popcount(dom_[v]), db = std::popcount(dom_[best]);
            if (dv < db || (dv == db && colored_nbrs_[v] > colored_nbrs_[best])) best = v;
        }
        return best;
    }

    // Returns true to stop the search (solution found in find-one mode,
    // visitor asked to stop, or budget hit).
    bool rec(const std::function<bool(const Coloring&)>* visit) {
        int v = pick();
        if (v < 0) {
            if (!visit) return true;
            return !(*visit)(col_);
        }
        for (int c = 0; c < 3; ++c) {
            if (!(dom_[v] & (1u << c))) continue;
            if (++nodes_ > limit_) {
                aborted_ = true;
                return true;
            }
            size_t mark = trail_.size();
            bool ok = assign(v, c);
            bool stop = ok && rec(visit);
            if (stop && !visit && !aborted_) return true;
            unassign(v, mark);
            if (stop) return true;
        }
        return false;
    }

    const Adjacency& adj_;
    int n_;
    std::uint64_t limit_;
    std::vector<std::uint8_t> dom_;
    std::vector<int> col_;
    std::vector<int> colored_nbrs_;
    std::vector<std::pair<int, std::uint8_t>> trail_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
};

void check_precoloring(const Adjacency& adj, const Coloring& pre) {
    if (pre.size() != adj.size()) throw ColoringError("precoloring length differs from vertex count");
    for (int c : pre)
        if (c < -1 || c > 2) throw ColoringError("colors must be 0, 1 or 2");
    if (!is_proper(adj, pre)) throw ColoringError("precoloring is not proper");
}

}  // namespace

SolveResult solve(const Adjacency& adj, const Coloring& pre, const SolveLimits& limits) {
    check_precoloring(adj, pre);
    SolveResult res;
    if (static_cast<int>(adj.size()) > limits.max_vertices) {
        res.status = SolveStatus::budget_exceeded;
        return res;
    }
    Search s(adj, limits.max_nodes);
    if (!s.seed(pre)) {
        res.status = SolveStatus::fails;
        return res;
    }
    bool found = s.find_one();
    res.nodes = s.nodes();
    if (s.aborted()) {
        res.status = SolveStatus::budget_exceeded;
    } else if (found) {
        res.status = SolveStatus::extends;
        res.coloring = s.colors();
    } else {
        res.status = SolveStatus::fails;
    }
    return res;
}

std::uint64_t for_each_coloring(const Adjacency& adj, const Coloring& pre,
                                const std::function<bool(const Coloring&)>& visit) {
    check_precoloring(adj, pre);
    Search s(adj, UINT64_MAX);
    if (!s.seed(pre)) return 0;
    std::uint64_t count = 0;
    s.find_all([&](const Coloring& c) {
        ++count;
        return visit(c);
    });
    return count;
}

std::optional<Coloring> extend_precoloring(const EmbeddedGraph& g, const Coloring& pre, const SolveLimits& limits) {
    auto res = solve(adjacency(g), pre, limits);
    if (res.status == SolveStatus::budget_exceeded)
        throw BudgetExceeded("solver budget exceeded on a " + std::to_string(g.n()) + "-vertex graph");
    if (res.status == SolveStatus::fails) return std::nullopt;
    return res.coloring;
}

std::vector<Edge> ring_edges(const EmbeddedGraph& g) {
    std::set<Edge> out;
    for (const auto& r : g.rings())
        for (size_t i = 0; i < r.size(); ++i) {
            int a = r[i], b = r[(i + 1) % r.size()];
            out.insert({std::min(a, b), std::max(a, b)});
        }
    return {out.begin(), out.end()};
}

std::vector<Coloring> proper_colorings(int n, const std::vector<int>& vertices, const std::vector<Edge>& edges) {
    std::vector<Coloring> out;
    Coloring cur(n, -1);
    std::vector<std::vector<int>> earlier(vertices.size());
    std::vector<int> pos(n, -1);
    for (size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
    for (auto [a, b] : edges) {
        if (pos[a] < 0 || pos[b] < 0) throw ColoringError("edge leaves the vertex list");
        if (pos[a] < pos[b])
            earlier[pos[b]].push_back(a);
        else
            earlier[pos[a]].push_back(b);
    }
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == vertices.size()) {
            out.push_back(cur);
            return;
        }
        int v = vertices[i];
        for (int c = 0; c < 3; ++c) {
            bool ok = true;
            for (int w : earlier[i])
                if (cur[w] == c) ok = false;
            if (!ok) continue;
            cur[v] = c;
            self(self, i + 1);
        }
        cur[v] = -1;
    };
    rec(rec, 0);
    return out;
}

std::vector<Coloring> ring_precolorings(const EmbeddedGraph& g) {
    return proper_colorings(g.n(), g.ring_vertices(), ring_edges(g));
}

ExtendableSet::ExtendableSet(std::vector<int> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() > 32) throw ColoringError("too many ring vertices to pack");
}

std::uint64_t ExtendableSet::encode(const Coloring& c) const {
    std::uint64_t code = 0;
    for (int v : vertices_) {
        int x = c.at(v);
        if (x < 0 || x > 2) throw ColoringError("ring vertex " + std::to_string(v) + " is uncolored");
        code = code * 4 + static_cast<std::uint64_t>(x);
    }
    return code;
}

void ExtendableSet::insert(const Coloring& c) { insert_code(encode(c)); }

void ExtendableSet::insert_code(std::uint64_t code) {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) codes_.insert(it, code);
}

bool ExtendableSet::contains(const Coloring& c) const {
    return std::binary_search(codes_.begin(), codes_.end(), encode(c));
}

bool ExtendableSet::subset_of(const ExtendableSet& other) const {
    if (vertices_ != other.vertices_) throw ColoringError("extendable sets over different vertices");
    return std::includes(other.codes_.begin(), other.codes_.end(), codes_.begin(), codes_.end());
}

std::vector<Coloring> ExtendableSet::members(int n) const {
    std::vector<Coloring> out;
    for (auto code : codes_) {
        Coloring c(n, -1);
        for (size_t i = vertices_.size(); i-- > 0;) {
            c[vertices_[i]] = static_cast<int>(code % 4);
            code /= 4;
        }
        out.push_back(c);
    }
    return out;
}

ExtendableSet extendable_set(const EmbeddedGraph& g, const SolveLimits& limits, int jobs) {
    if (g.rings().empty()) throw ColoringError("graph has no rings");
    auto pre = ring_precolorings(g);
    auto adj = adjacency(g);
    std::vector<char> ok(pre.size(), 0);
    std::vector<char> over(pre.size(), 0);
    auto work = [&](size_t start, size_t step) {
        for (size_t i = start; i < pre.size(); i += step) {
            // ring chords can make a ring coloring improper in the whole graph
            if (!is_proper(adj, pre[i])) continue;
            auto r = solve(adj, pre[i], limits);
            ok[i] = r.status == SolveStatus::extends;
            over[i] = r.status == SolveStatus::budget_exceeded;
        }
    };
    if (jobs <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work, static_cast<size_t>(t), static_cast<size_t>(jobs));
        for (auto& th : pool) th.join();
    }
    ExtendableSet out(g.ring_vertices());
    for (size_t i = 0; i < pre.size(); ++i) {
        if (over[i]) throw BudgetExceeded("solver budget exceeded while computing an extendable set");
        if (ok[i]) out.insert(pre[i]);
    }
    return out;
}

FourCycleClass classify_4cycle(const std::array<int, 4>& c) {
    for (int i = 0; i < 4; ++i) {
        if (c[i] < 0 || c[i] > 2) throw ColoringError("4-cycle vertex uncolored");
        if (c[i] == c[(i + 1) % 4]) throw ColoringError("4-cycle coloring is not proper");
    }
    bool d1 = c[0] != c[2], d2 = c[1] != c[3];
    if (d1 && d2) throw ColoringError("internal: both diagonals differ on a proper 3-coloring");
    if (d1) return FourCycleClass::first_diagonal;
    if (d2) return FourCycleClass::second_diagonal;
    return FourCycleClass::bichromatic;
}

FourCycleClass classify_4cycle(const Cycle& cyc, const Coloring& psi) {
    if (cyc.size() != 4) throw ColoringError("not a 4-cycle");
    return classify_4cycle({psi.at(cyc[0]), psi.at(cyc[1]), psi.at(cyc[2]), psi.at(cyc[3])});
}

bool is_dangerous(const FamilyMeta& meta, int ring, const Coloring& psi) {
    if (ring < 0 || ring >= static_cast<int>(meta.rings.size()) || !meta.rings[ring].has_interface)
        throw ColoringError("ring has no interface pair");
    const RingInfo& info = meta.rings[ring];
    auto cls = classify_4cycle(info.labels, psi);
    return cls == FourCycleClass::first_diagonal || (info.strong && cls == FourCycleClass::bichromatic);
}

namespace {

int step_sign(int from, int to) { return ((to - from) % 3 + 3) % 3 == 1 ? 1 : -1; }

int omega_unchecked(const std::vector<int>& walk, const Coloring& phi) {
    int total = 0;
    int k = static_cast<int>(walk.size());
    for (int i = 0; i < k; ++i) {
        int a = phi.at(walk[i]), b = phi.at(walk[(i + 1) % k]);
        if (a < 0 || b < 0) throw ColoringError("walk vertex uncolored");
        if (a == b) throw ColoringError("coloring is not proper along the walk");
        total += step_sign(a, b);
    }
    return total;
}

}  // namespace

std::vector<Arc> orient(const EmbeddedGraph& g, const Coloring& phi) {
    if (static_cast<int>(phi.size()) != g.n()) throw ColoringError("coloring length differs from vertex count");
    std::vector<Arc> out;
    for (auto [u, v] : g.edges()) {
        if (phi[u] < 0 || phi[v] < 0) throw ColoringError("orientation needs a total coloring");
        if (phi[u] == phi[v]) throw ColoringError("coloring is not proper");
        if (step_sign(phi[u], phi[v]) == 1)
            out.push_back({u, v});
        else
            out.push_back({v, u});
    }
    return out;
}

int omega(const EmbeddedGraph& g, const std::vector<int>& walk, const Coloring& phi) {
    int k = static_cast<int>(walk.size());
    if (k < 2) throw ColoringError("walk too short");
    for (int i = 0; i < k; ++i)
        if (!g.adjacent(walk[i], walk[(i + 1) % k])) throw ColoringError("not a closed walk of the graph");
    return omega_unchecked(walk, phi);
}

int winding_number(const EmbeddedGraph& g, const Coloring& phi, const Cycle& c) {
    Cycle w = positive_orientation(g, c);
    int om = omega(g, w, phi);
    if (om % 3 != 0) throw ColoringError("internal: omega not divisible by 3");
    return om / 3;
}

std::optional<int> causes_winding_number(const EmbeddedGraph& g, int ring, const Coloring& psi) {
    if (!is_near_33_quadrangulation(g)) throw GraphError("graph is not a near 3,3-quadrangulation");
    const Cycle& c = g.rings().at(ring);
    int k = static_cast<int>(c.size());
    if (k == 3) return winding_number(g, psi, c);
    // triangle sharing a ring edge
    for (const auto& t : triangles(g)) {
        for (int i = 0; i < k; ++i) {
            int a = c[i], b = c[(i + 1) % k];
            if (!std::count(t.begin(), t.end(), a) || !std::count(t.begin(), t.end(), b)) continue;
            int third = t[0] + t[1] + t[2] - a - b;
            Cycle tc = {t[0], t[1], t[2]};
            if (is_contractible(g, tc)) continue;
            Coloring ext = psi;
            int forced = 3 - psi.at(a) - psi.at(b);
            if (ext[third] >= 0 && ext[third] != forced) return std::nullopt;
            ext[third] = forced;
            return winding_number(g, ext, tc);
        }
    }
    // a ring path v1 v2 v3 on a 5-face
    int found = -1;
    for (int i = 0; i < k; ++i) {
        int a = c[(i - 1 + k) % k], b = c[i], d = c[(i + 1) % k];
        for (const auto& f : g.faces()) {
            if (f.is_hole || f.vertices.size() != 5) continue;
            const auto& w = f.vertices;
            for (int j = 0; j < 5; ++j) {
                int x = w[j], y = w[(j + 1) % 5], z = w[(j + 2) % 5];
                if (y == b && ((x == a && z == d) || (x == d && z == a))) {
                    if (found >= 0 && found != i) throw GraphError("ring path on a 5-face is not unique");
                    found = i;
                }
            }
        }
    }
    if (found < 0) return std::nullopt;
    int v1 = c[(found - 1 + k) % k], v3 = c[(found + 1) % k], v2 = c[found];
    if (psi.at(v1) == psi.at(v3)) return std::nullopt;
    Cycle pos = positive_orientation(g, c);
    std::vector<int> virt;
    for (int x : pos)
        if (x != v2) virt.push_back(x);
    int om = omega_unchecked(virt, psi);
    if (om % 3 != 0) throw ColoringError("internal: omega not divisible by 3");
    return om / 3;
}

bool is_consistent(const EmbeddedGraph& g, const Coloring& psi) {
    auto w1 = causes_winding_number(g, 0, psi);
    auto w2 = causes_winding_number(g, 1, psi);
    return !(w1 && w2 && *w1 == -*w2 && *w1 != 0);
}

bool six_cycle_nonextension(const std::array<int, 6>& psi, const std::vector<std::pair<int, int>>& chords) {
    for (int i = 0; i < 6; ++i)
        if (psi[i] < 0 || psi[i] > 2 || psi[i] == psi[(i + 1) % 6])
            throw ColoringError("6-cycle coloring is not proper");
    for (auto [a, b] : chords) {
        int lo = std::min(a, b), hi = std::max(a, b);
        if (hi - lo == 3 && psi[lo] == psi[hi]) return true;
    }
    return psi[0] == psi[3] && psi[1] == psi[4] && psi[2] == psi[5] && psi[0] != psi[1] && psi[1] != psi[2] &&
           psi[2] != psi[0];
}

}  // namespace cylcol
