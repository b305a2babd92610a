#include "cylcol/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "cylcol/coloring.hpp"
#include "cylcol/io.hpp"
#include "cylcol/reductions.hpp"

#ifndef CYLCOL_DATA_DIR
#define CYLCOL_DATA_DIR "data"
#endif

namespace cylcol {

namespace {

struct Profile {
    int p, q, n;
    std::vector<int> faces;  // sorted non-hole face lengths, empty = unchecked
};

const std::map<std::string, Profile>& profiles() {
    static const std::map<std::string, Profile> table = {
        {"q1", {4, 4, 8, {4, 4, 4, 4}}}, {"q2", {4, 4, 8, {4, 4, 4, 4}}}, {"q3", {4, 4, 8, {4, 4, 4, 4}}},
        {"q4", {4, 4, 8, {4, 4, 4, 4}}}, {"q5", {3, 3, 6, {4, 4, 4}}},    {"x1", {4, 4, 8, {4, 4, 6}}},
        {"x2", {4, 4, 8, {4, 4, 6}}},    {"x3", {4, 4, 8, {4, 4, 6}}},    {"x4", {4, 4, 8, {4, 5, 5}}},
        {"x5", {4, 4, 8, {4, 8}}},       {"x6", {4, 4, 8, {4, 8}}},       {"x7", {3, 3, 6, {4, 6}}},
        {"s1", {4, 4, 8, {4, 5, 5}}},    {"s2", {4, 4, 8, {4, 5, 5}}},    {"t1", {3, 4, 7, {4, 4, 5}}},
        {"t2", {3, 4, 7, {4, 4, 5}}},    {"tp1", {3, 4, 7, {4, 7}}},      {"tp2", {3, 4, 7, {4, 7}}},
        {"ev1", {3, 4, 9, {4, 4, 4, 4, 5}}}, {"ev2", {4, 4, 10, {4, 4, 4, 5, 5}}}, {"j1", {3, 4, 6, {4, 5}}},
        {"i1", {3, 4, 5, {5}}},          {"i2", {4, 4, 6, {6}}},          {"i3", {4, 4, 7, {}}},
        {"i4", {3, 4, 6, {}}},
    };
    return table;
}

int non_ring_triangles(const EmbeddedGraph& g) {
    int count = 0;
    for (const auto& t : triangles(g)) {
        Cycle c = canonical_cycle(Cycle(t.begin(), t.end()));
        bool ring = false;
        for (const auto& r : g.rings()) {
            Cycle rev(r.rbegin(), r.rend());
            ring = ring || (r.size() == 3 && (canonical_cycle(r) == c || canonical_cycle(rev) == c));
        }
        count += !ring;
    }
    return count;
}

std::vector<int> face_profile(const EmbeddedGraph& g) {
    std::vector<int> out;
    for (const auto& f : g.faces())
        if (!f.is_hole) out.push_back(static_cast<int>(f.vertices.size()));
    std::sort(out.begin(), out.end());
    return out;
}

// Number of edges a face shares with each ring.
std::pair<int, int> ring_edge_counts(const EmbeddedGraph& g, const FaceWalk& f) {
    auto on = [&](int r, int a, int b) {
        const auto& c = g.rings()[r];
        int k = static_cast<int>(c.size());
        for (int i = 0; i < k; ++i)
            if ((c[i] == a && c[(i + 1) % k] == b) || (c[i] == b && c[(i + 1) % k] == a)) return true;
        return false;
    };
    std::pair<int, int> out{0, 0};
    int m = static_cast<int>(f.vertices.size());
    for (int i = 0; i < m; ++i) {
        int a = f.vertices[i], b = f.vertices[(i + 1) % m];
        out.first += on(0, a, b);
        out.second += on(1, a, b);
    }
    return out;
}

// True when some 4-face runs along two edges of the ring with the given index.
bool has_bent_quad(const EmbeddedGraph& g, int ring) {
    for (const auto& f : g.faces()) {
        if (f.is_hole || f.vertices.size() != 4) continue;
        auto [a, b] = ring_edge_counts(g, f);
        if ((ring == 0 ? a : b) == 2) return true;
    }
    return false;
}

int ring_of_length(const EmbeddedGraph& g, int len) {
    for (int r = 0; r < 2; ++r)
        if (static_cast<int>(g.rings()[r].size()) == len) return r;
    return -1;
}

bool contractible_short_cycles_are_faces(const EmbeddedGraph& g, int max_len) {
    for (const auto& c : short_cycles(g, max_len))
        if (is_contractible(g, c) && !is_face_cycle(g, c)) return false;
    return true;
}

// Merges a vertex of ring 0 with a vertex of ring 1 across a face, choosing the
// tame result with the fewest contractible (<=4)-cycles (first one on ties).
EmbeddedGraph first_cross_identification(const EmbeddedGraph& g) {
    const auto& r0 = g.rings()[0];
    const auto& r1 = g.rings()[1];
    auto in = [](const Cycle& c, int v) { return std::find(c.begin(), c.end(), v) != c.end(); };
    std::optional<EmbeddedGraph> best;
    size_t best_count = 0;
    for (size_t f = 0; f < g.faces().size(); ++f) {
        const auto& w = g.faces()[f].vertices;
        if (g.faces()[f].is_hole) continue;
        for (int a : w)
            for (int b : w) {
                if (!in(r0, a) || !in(r1, b) || g.adjacent(a, b)) continue;
                try {
                    auto red = pinch(g, a, b, static_cast<int>(f));
                    if (!is_tame(red.graph)) continue;
                    size_t count = 0;
                    for (const auto& c : short_cycles(red.graph, 4)) count += is_contractible(red.graph, c);
                    if (!best || count < best_count) {
                        best = red.graph;
                        best_count = count;
                    }
                } catch (const GraphError&) {
                }
            }
    }
    if (!best) throw GraphError("no tame identification across the rings");
    return *best;
}

}  // namespace

const std::vector<std::string>& basic_ids() {
    static const std::vector<std::string> ids = {"q1", "q2", "q3",  "q4",  "q5", "ev1", "ev2", "t1", "t2", "tp1", "tp2",
                                                 "s1", "s2", "x1",  "x2",  "x3", "x4",  "x5",  "x6", "x7", "j1"};
    return ids;
}

const std::vector<std::string>& identification_ids() {
    static const std::vector<std::string> ids = {"i1", "i2", "i3", "i4"};
    return ids;
}

std::vector<std::string> catalog_ids() {
    auto out = basic_ids();
    for (const auto& id : identification_ids()) out.push_back(id);
    return out;
}

std::string display_name(const std::string& id) {
    std::string out;
    if (id.rfind("tp", 0) == 0) return "T'" + id.substr(2);
    for (char c : id) out += static_cast<char>(std::isdigit(static_cast<unsigned char>(c)) ? c : std::toupper(c));
    return out;
}

std::vector<Edge> ring_canonical_form(const EmbeddedGraph& g) {
    if (g.rings().size() != 2) throw GraphError("canonical form needs two rings");
    auto edges = g.edges();
    std::vector<Edge> best;
    bool have = false;
    for (int first = 0; first < 2; ++first) {
        const Cycle& A = g.rings()[first];
        const Cycle& B = g.rings()[1 - first];
        if (first == 1 && A.size() != B.size()) continue;
        int pa = static_cast<int>(A.size()), pb = static_cast<int>(B.size());
        for (int ra = 0; ra < pa; ++ra)
            for (int da : {1, -1})
                for (int rb = 0; rb < pb; ++rb)
                    for (int db : {1, -1}) {
                        std::vector<int> label(g.n(), -1);
                        for (int i = 0; i < pa; ++i) label[A[((ra + da * i) % pa + pa) % pa]] = i;
                        for (int i = 0; i < pb; ++i) {
                            int v = B[((rb + db * i) % pb + pb) % pb];
                            if (label[v] < 0) label[v] = pa + i;
                        }
                        int next = pa + pb;
                        for (int v = 0; v < g.n(); ++v)
                            if (label[v] < 0) label[v] = next++;
                        std::vector<Edge> form;
                        for (auto [u, v] : edges) form.push_back({std::min(label[u], label[v]), std::max(label[u], label[v])});
                        std::sort(form.begin(), form.end());
                        if (!have || form < best) {
                            best = form;
                            have = true;
                        }
                    }
    }
    return best;
}

std::vector<EmbeddedGraph> ring_only_basic(int p, int q, int m) {
    std::vector<EmbeddedGraph> out;
    std::set<std::vector<Edge>> seen;
    std::vector<std::pair<int, int>> steps(m);
    std::function<void(int, int, int)> rec = [&](int j, int ka, int lb) {
        if (j == m) {
            if (ka != p || lb != q) return;
            for (int s = 0; s < q; ++s) {
                std::vector<std::vector<int>> faces;
                int A = 0, B = s;
                for (auto [k, l] : steps) {
                    std::vector<int> f;
                    for (int i = 0; i <= k; ++i) f.push_back((A + i) % p);
                    for (int i = l; i >= 0; --i) f.push_back(p + (B + i) % q);
                    faces.push_back(f);
                    A += k;
                    B += l;
                }
                Cycle c1 = {0}, c2;
                for (int i = p - 1; i >= 1; --i) c1.push_back(i);
                for (int i = 0; i < q; ++i) c2.push_back(p + i);
                faces.push_back(c1);
                faces.push_back(c2);
                EmbeddedGraph g;
                try {
                    g = from_faces(p + q, faces, {c1, c2}, Surface::cylinder);
                } catch (const GraphError&) {
                    continue;
                }
                if (!is_tame(g)) continue;
                bool has_quad = false;
                for (const auto& f : g.faces())
                    if (!f.is_hole && f.vertices.size() == 4) has_quad = true;
                if (!has_quad || !contractible_short_cycles_are_faces(g, 4)) continue;
                auto form = ring_canonical_form(g);
                if (!seen.insert(form).second) continue;
                if (!is_critical(g)) continue;
                out.push_back(g);
            }
            return;
        }
        for (int k = 0; ka + k <= p; ++k)
            for (int l = 0; lb + l <= q; ++l) {
                if (k + l < 2) continue;
                steps[j] = {k, l};
                rec(j + 1, ka + k, lb + l);
            }
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end(), [](const EmbeddedGraph& a, const EmbeddedGraph& b) {
        return ring_canonical_form(a) < ring_canonical_form(b);
    });
    return out;
}

std::map<std::string, EmbeddedGraph> build_catalog() {
    std::map<std::string, EmbeddedGraph> cat;
    auto take = [&](const std::vector<EmbeddedGraph>& gs, const std::vector<std::string>& names, const char* what) {
        if (gs.size() != names.size())
            throw GraphError(std::string("expected ") + std::to_string(names.size()) + " " + what + " classes, found " +
                             std::to_string(gs.size()));
        for (size_t i = 0; i < gs.size(); ++i) cat[names[i]] = gs[i];
    };
    // split a class by whether some 4-face bends along two edges of a ring
    auto split = [&](const std::vector<EmbeddedGraph>& gs, int ring_len, const std::string& straight,
                     const std::string& bent, const char* what) {
        std::vector<EmbeddedGraph> s, b;
        for (const auto& g : gs) (has_bent_quad(g, ring_of_length(g, ring_len)) ? b : s).push_back(g);
        take(s, {straight}, what);
        take(b, {bent}, what);
    };

    auto by_profile = [](std::vector<EmbeddedGraph> gs, const std::vector<int>& prof) {
        std::vector<EmbeddedGraph> out;
        for (auto& g : gs)
            if (face_profile(g) == prof) out.push_back(g);
        return out;
    };

    take(ring_only_basic(3, 3, 2), {"x7"}, "3,3 two-face");
    take(ring_only_basic(3, 3, 3), {"q5"}, "3,3 three-face");
    split(ring_only_basic(3, 4, 2), 4, "tp1", "tp2", "3,4 two-face");
    split(ring_only_basic(3, 4, 3), 4, "t1", "t2", "3,4 three-face");
    {
        auto two = ring_only_basic(4, 4, 2);
        std::vector<EmbeddedGraph> straight, bent;
        for (const auto& g : two) (has_bent_quad(g, 0) || has_bent_quad(g, 1) ? bent : straight).push_back(g);
        take(straight, {"x5"}, "4,4 two-face");
        take(bent, {"x6"}, "4,4 two-face");
    }
    {
        auto three = ring_only_basic(4, 4, 3);
        // three classes of each profile exist; the surplus split-octagon class is the one
        // with a triangle that is not a ring, and it fills the fourth x slot
        auto octagon = by_profile(three, {4, 5, 5});
        std::stable_partition(octagon.begin(), octagon.end(),
                              [](const EmbeddedGraph& g) { return non_ring_triangles(g) == 0; });
        take(octagon, {"s1", "s2", "x4"}, "4,4 split-octagon");
        take(by_profile(three, {4, 4, 6}), {"x1", "x2", "x3"}, "4,4 two-quad");
    }
    take(ring_only_basic(4, 4, 4), {"q1", "q2", "q3", "q4"}, "4,4 four-quad");

    cat["ev1"] = from_unoriented_faces(9,
                                       {{0, 1, 2},
                                        {0, 1, 7, 8},
                                        {2, 1, 7, 3},
                                        {2, 0, 8, 5},
                                        {2, 3, 4, 5},
                                        {7, 3, 6, 5, 8},
                                        {3, 4, 5, 6}},
                                       {0, 6}, Surface::cylinder);
    cat["ev2"] = from_unoriented_faces(10,
                                       {{1, 4, 7, 5},
                                        {0, 1, 2, 3},
                                        {1, 2, 7, 4},
                                        {1, 5, 7, 6, 0},
                                        {6, 7, 2, 9},
                                        {0, 6, 9, 8, 3},
                                        {2, 3, 8, 9}},
                                       {0, 6}, Surface::cylinder);
    cat["j1"] = from_unoriented_faces(6, {{0, 1, 2}, {0, 3, 4, 5}, {0, 1, 4, 3}, {0, 2, 1, 4, 5}}, {0, 1},
                                      Surface::cylinder);
    cat["i1"] = from_unoriented_faces(5, {{0, 1, 2}, {1, 0, 4, 3}, {0, 2, 1, 3, 4}}, {0, 1}, Surface::cylinder);
    cat["i2"] = from_unoriented_faces(6, {{0, 1, 2, 3}, {1, 0, 4, 5}, {0, 3, 2, 1, 5, 4}}, {0, 1}, Surface::cylinder);
    cat["i3"] = first_cross_identification(cat.at("s1"));
    cat["i4"] = first_cross_identification(cat.at("t2"));
    return cat;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

}  // namespace

void write_catalog(const std::string& dir, const std::map<std::string, EmbeddedGraph>& graphs) {
    std::filesystem::create_directories(dir);
    std::ostringstream manifest;
    manifest << "# fnv1a64 file\n";
    for (const auto& id : catalog_ids()) {
        auto it = graphs.find(id);
        if (it == graphs.end()) throw GraphError("catalog is missing " + id);
        std::string text = "# " + display_name(id) + "\n" + write_graph(it->second);
        std::string file = id + ".graph";
        write_text_file((std::filesystem::path(dir) / file).string(), text);
        manifest << hex64(fnv1a64(text)) << " " << file << "\n";
    }
    write_text_file((std::filesystem::path(dir) / "MANIFEST").string(), manifest.str());
}

std::string catalog_violation(const std::string& id, const EmbeddedGraph& g) {
    auto it = profiles().find(id);
    if (it == profiles().end()) return "unknown catalog id " + id;
    const Profile& pr = it->second;
    if (g.surface() != Surface::cylinder || g.rings().size() != 2) return "not a cylinder graph with two rings";
    int p = static_cast<int>(g.rings()[0].size()), q = static_cast<int>(g.rings()[1].size());
    if (std::min(p, q) != std::min(pr.p, pr.q) || std::max(p, q) != std::max(pr.p, pr.q))
        return "ring lengths differ from the expected ones";
    if (g.n() != pr.n) return "unexpected vertex count";
    if (!pr.faces.empty() && face_profile(g) != pr.faces) return "unexpected face lengths";
    if (!is_tame(g)) return "graph is not tame";
    bool shared = false;
    for (int v : g.rings()[0])
        for (int w : g.rings()[1])
            if (v == w) shared = true;
    bool ident = id[0] == 'i';
    if (ident) {
        if (!shared) return "rings of an identification result must meet";
        return "";
    }
    if ((id == "j1") != shared) return id == "j1" ? "rings must share a vertex" : "rings must be disjoint";
    bool quad = is_quadrangulation(g);
    if (id[0] == 'q' && !quad) return "expected a quadrangulation";
    if (id[0] != 'q' && quad) return "unexpected quadrangulation";
    if (id[0] == 'x') {
        int odd = 0;
        for (int len : face_profile(g)) odd += len != 4;
        if (odd > 2) return "almost quadrangulation has too many non-quadrilateral faces";
    }
    bool interior = g.ring_vertices().size() < static_cast<size_t>(g.n());
    if ((id.rfind("ev", 0) == 0) != interior) return "interior vertices present exactly in the ev graphs";
    for (int v = 0; v < g.n(); ++v)
        if (!g.on_ring(v) && g.degree(v) < 3) return "interior vertex of degree below 3";
    if (!contractible_short_cycles_are_faces(g, 4)) return "contractible 4-cycle that is not a face";
    // a non-ring triangle would have to be a cutting cycle, so only the surplus class keeps one
    if ((id == "x4") != (non_ring_triangles(g) > 0))
        return id == "x4" ? "expected a triangle off the rings" : "triangle that is not a ring";
    return "";
}

std::map<std::string, FamilyGraph> basic_catalog(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path root(dir);
    fs::path manifest_path = root / "MANIFEST";
    if (!fs::exists(manifest_path)) throw GraphError("catalog manifest missing in " + dir);
    std::map<std::string, std::string> sums;
    {
        std::istringstream in(read_text_file(manifest_path.string()));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string sum, file;
            ls >> sum >> file;
            sums[file] = sum;
        }
    }
    std::map<std::string, FamilyGraph> out;
    for (const auto& id : catalog_ids()) {
        std::string file = id + ".graph";
        fs::path path = root / file;
        if (!fs::exists(path)) throw GraphError("catalog file missing: " + path.string());
        std::string text = read_text_file(path.string());
        auto it = sums.find(file);
        if (it == sums.end() || it->second != hex64(fnv1a64(text))) throw GraphError("checksum mismatch for " + file);
        EmbeddedGraph g = parse_graph(text);
        std::string why = catalog_violation(id, g);
        if (!why.empty()) throw GraphError(display_name(id) + ": " + why);
        FamilyGraph fg{g, {}};
        fg.meta.family = id[0] == 'i' ? "identification" : "basic";
        for (const auto& r : g.rings()) fg.meta.rings.push_back(RingInfo{r});
        out[id] = fg;
    }
    return out;
}

std::string default_catalog_dir() {
    // installed copies (the Python wheel) point here at their bundled data
    if (const char* env = std::getenv("CYLCOL_DATA"); env && *env) return std::string(env) + "/catalog";
    return std::string(CYLCOL_DATA_DIR) + "/catalog";
}

}  // namespace cylcol
