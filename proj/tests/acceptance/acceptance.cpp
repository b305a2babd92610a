// acceptance [k...]: runs the numbered criteria (all when none are given) and
// prints one PASS/FAIL line for each. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cylcol/catalog.hpp"
#include "cylcol/coloring.hpp"
#include "cylcol/families.hpp"
#include "cylcol/verify.hpp"

using namespace cylcol;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

SuiteOptions pool_options() {
    SuiteOptions o;
    o.jobs = std::max(1u, std::thread::hardware_concurrency());
    return o;
}

// Shared bookkeeping for suite-backed criteria: no refutation, no skip.
bool clean(const VerificationReport& r, std::ostringstream& why) {
    bool ok = r.count(Verdict::refuted) == 0 && r.count(Verdict::skipped) == 0 && !r.entries.empty();
    why << r.suite << " instances=" << r.entries.size() << " confirmed=" << r.count(Verdict::confirmed)
        << " refuted=" << r.count(Verdict::refuted) << " skipped=" << r.count(Verdict::skipped)
        << " space=" << r.total_space();
    for (const auto& e : r.entries)
        if (e.verdict != Verdict::confirmed) {
            why << "; first bad " << e.instance << " (" << to_string(e.verdict) << ": " << e.detail << ")";
            break;
        }
    return ok;
}

Outcome col_tw() {
    Outcome o;
    std::ostringstream why;
    for (bool patching : {false, true}) {
        auto r = verify_col_tw(6, FramingSet::all, patching, pool_options());
        if (patching) why << " | ";
        o.pass = clean(r, why) && o.pass;
        // 16 framings for each n
        o.pass = o.pass && r.entries.size() == 6 * 16;
        int full = 0;
        for (const auto& e : r.entries) full += e.space == 324;
        why << " full-space=" << full;
    }
    o.summary = why.str();
    return o;
}

Outcome col_htw() {
    Outcome o;
    std::ostringstream why;
    auto r = verify_col_htw(4, {HtwVariant::edge, HtwVariant::quasiedge}, pool_options());
    o.pass = clean(r, why) && r.entries.size() == 8;
    for (const auto& e : r.entries) o.pass = o.pass && e.space == 18;
    o.summary = why.str();
    return o;
}

Outcome tents() {
    Outcome o;
    std::ostringstream why;
    auto r = verify_tent(3, pool_options());
    o.pass = clean(r, why) && r.entries.size() == 16;
    for (const auto& e : r.entries) o.pass = o.pass && e.detail == "extendable=12";
    o.summary = why.str();
    return o;
}

Outcome patches() {
    Outcome o;
    std::ostringstream why;
    auto r = verify_patch_equiv(shipped_patches(), pool_options());
    o.pass = clean(r, why);
    for (const auto& e : r.entries) o.pass = o.pass && e.space == 27;
    auto canon = verify_patch_equiv({canonical_patch()});
    std::string detail = canon.entries.empty() ? "" : canon.entries[0].detail;
    o.pass = o.pass && canon.ok() && detail == "extendable=21";
    why << " canonical " << detail;
    o.summary = why.str();
    return o;
}

Outcome cylflow() {
    Outcome o;
    std::ostringstream why;
    o.pass = clean(verify_cylflow(default_cylflow_instances(), pool_options()), why);
    o.summary = why.str();
    return o;
}

Outcome col44() {
    Outcome o;
    std::ostringstream why;
    // distance below the ring length is outside the claim
    std::vector<std::pair<std::string, EmbeddedGraph>> instances;
    for (auto& inst : default_col44_instances()) {
        const auto& rings = inst.second.rings();
        if (cycle_distance(inst.second, rings[0], rings[1]) >= static_cast<int>(rings[0].size()))
            instances.push_back(std::move(inst));
    }
    int threes = 0, fours = 0;
    for (const auto& [name, g] : instances) (g.rings()[0].size() == 3 ? threes : fours)++;
    o.pass = clean(verify_col44(instances, pool_options()), why) && threes > 0 && fours > 0;
    why << " (3,3: " << threes << ", 4,4: " << fours << ")";
    o.summary = why.str();
    return o;
}

Outcome col33() {
    Outcome o;
    std::ostringstream why;
    auto instances = default_col33_instances(9);
    // the shorter distance-4 controls sit outside the criterion's range
    std::vector<std::pair<std::string, EmbeddedGraph>> in_range;
    for (auto& inst : instances)
        if (inst.first.find("-9") != std::string::npos && inst.second.n() <= 40) in_range.push_back(inst);
    o.pass = clean(verify_col33(in_range, pool_options()), why) && !in_range.empty();
    o.summary = why.str();
    return o;
}

Outcome chaincol() {
    Outcome o;
    std::ostringstream why;
    ChaincolOptions c;
    auto cat = build_catalog();
    int nonquad = 0;
    for (const auto& id : c.subset) nonquad += !is_quadrangulation(cat.at(id));
    auto r = verify_chaincol(c, pool_options());
    o.pass = clean(r, why) && c.n == 7 && c.samples == 10000 && c.subset.size() >= 5 && nonquad >= 3;
    why << " subset=" << c.subset.size() << " nonquad=" << nonquad;
    o.summary = why.str();
    return o;
}

Outcome reductions() {
    Outcome o;
    std::ostringstream why;
    auto r = verify_reductions(100, 1, pool_options());
    o.pass = clean(r, why) && r.entries.size() == 100;
    o.summary = why.str();
    return o;
}

Outcome criticality() {
    Outcome o;
    std::ostringstream why;
    auto r = verify_criticality(1, "", pool_options());
    // one entry per graph and one per mutant
    o.pass = clean(r, why) && r.entries.size() == 2 * basic_ids().size();
    o.summary = why.str();
    return o;
}

// Walks every one of the 3^n total assignments; no pruning, no solver.
bool brute_force_extends(const EmbeddedGraph& g, const Coloring& pre) {
    int n = g.n();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v : g.rotation(u))
            if (u < v) edges.push_back({u, v});
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    Coloring c(n);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        bool agrees = true;
        for (int v = 0; v < n; ++v) {
            c[v] = static_cast<int>(x % 3);
            x /= 3;
            if (pre[v] >= 0 && pre[v] != c[v]) agrees = false;
        }
        if (!agrees) continue;
        bool proper = true;
        for (auto [u, v] : edges)
            if (c[u] == c[v]) {
                proper = false;
                break;
            }
        if (proper) return true;
    }
    return false;
}

std::vector<EmbeddedGraph> small_ringed_graphs() {
    std::vector<EmbeddedGraph> pool;
    auto keep = [&](const EmbeddedGraph& g) {
        if (g.n() <= 12 && !g.rings().empty()) pool.push_back(g);
    };
    for (const auto& [id, g] : build_catalog()) keep(g);
    for (int n = 1; n <= 3; ++n) {
        keep(reduced_thomas_walls(n).graph);
        keep(havel_thomas_walls(n, HtwVariant::edge).graph);
    }
    keep(havel_thomas_walls(1, HtwVariant::quasiedge).graph);
    for (int l = 0; l <= 2; ++l)
        for (int r = 0; l + r <= 3; ++r) keep(tent(l, r).graph);
    for (int r = 3; r <= 4; ++r)
        for (int layers = 1; (layers + 1) * r <= 12; ++layers) keep(quadrangulated_cylinder(r, r, layers));
    keep(random_quad_splits(quadrangulated_cylinder(3, 3, 2), 2, 5));
    keep(near_33_quadrangulation(quadrangulated_cylinder(3, 3, 2), {{0, 1}}).graph);
    keep(canonical_patch());
    return pool;
}

Outcome solver_oracle() {
    Outcome o;
    std::ostringstream why;
    auto pool = small_ringed_graphs();
    std::mt19937_64 rng(2024);
    int agree = 0, extending = 0, thinned = 0;
    for (int i = 0; i < 500; ++i) {
        EmbeddedGraph g = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
        // half the instances lose some non-ring edges so the pool is not just the named families
        if (rng() % 2) {
            std::vector<Edge> drop;
            for (auto e : g.edges())
                if (!g.is_ring_edge(e.first, e.second) && rng() % 4 == 0) drop.push_back(e);
            if (!drop.empty()) {
                std::vector<int> all(g.n());
                for (int v = 0; v < g.n(); ++v) all[v] = v;
                try {
                    g = induced_restriction(g, all, drop, g.rings());
                    ++thinned;
                } catch (const GraphError&) {
                    // disconnected: keep the whole graph
                }
            }
        }
        // ring chords may clash; the solver only accepts precolorings proper on every edge
        std::vector<Coloring> pres;
        auto adj = adjacency(g);
        for (auto& c : ring_precolorings(g))
            if (is_proper(adj, c)) pres.push_back(std::move(c));
        const Coloring& pre = pres[std::uniform_int_distribution<size_t>(0, pres.size() - 1)(rng)];
        bool solver = extend_precoloring(g, pre).has_value();
        bool brute = brute_force_extends(g, pre);
        if (solver == brute) {
            ++agree;
        } else if (o.pass) {
            o.pass = false;
            why << "disagreement on instance " << i << " (" << g.n() << " vertices); ";
        }
        extending += brute;
    }
    why << "instances=500 agree=" << agree << " extending=" << extending << " thinned=" << thinned
        << " pool=" << pool.size();
    o.summary = why.str();
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
        {"reduced Thomas-Walls danger, n<=6, all framings, patching off and on", col_tw},
        {"Havel-Thomas-Walls extend exactly when not dangerous, n<=4", col_htw},
        {"tents up to depth 3 extend exactly 12 precolorings", tents},
        {"shipped patches obey the three-vertex rule, canonical gives 21", patches},
        {"quadrangulations carry equal winding on both rings", cylflow},
        {"3,3 failures have opposite windings, 4,4 at distance 4 never fail", col44},
        {"near 3,3-quadrangulations at distance 9 extend iff consistent", col33},
        {"chains of length 7 and 10^4 random chains keep both conclusions", chaincol},
        {"100 identify/collapse steps dominate their inputs", reductions},
        {"basic catalog graphs are critical, pendant mutants are not", criticality},
        {"solver agrees with 3^n enumeration on 500 random instances", solver_oracle},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(criteria().size())) {
            std::cerr << "usage: acceptance [1-" << criteria().size() << "]...\n";
            return 2;
        }
        which.push_back(k);
    }
    if (which.empty())
        for (size_t k = 1; k <= criteria().size(); ++k) which.push_back(static_cast<int>(k));

    int failed = 0;
    for (int k : which) {
        const auto& [title, run] = criteria()[k - 1];
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.summary = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << title << " [" << o.summary << "] ("
                  << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
