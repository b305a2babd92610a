#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylcol/coloring.hpp"
#include "cylcol/families.hpp"

namespace cylcol {

enum class Verdict { confirmed, refuted, skipped };
std::string to_string(Verdict v);

struct Counterexample {
    std::string graph;     // graph file text
    std::string coloring;  // coloring file text
};

struct ReportEntry {
    std::string instance;
    Verdict verdict = Verdict::confirmed;
    std::uint64_t space = 0;  // precolorings (or colorings) examined
    double millis = 0;
    std::string detail;
    std::optional<Counterexample> counterexample;
};

struct VerificationReport {
    std::string suite;
    std::vector<ReportEntry> entries;  // sorted by instance key
    std::vector<std::string> notes;

    int count(Verdict v) const;
    std::uint64_t total_space() const;
    bool ok() const { return count(Verdict::refuted) == 0; }
    // One record per entry plus a summary line; timing omitted when asked.
    std::string text(bool timing = true) const;
    // Writes <suite>-<k>.graph / .coloring for each refuted entry; returns the paths.
    std::vector<std::string> write_counterexamples(const std::string& dir) const;
};

struct SuiteOptions {
    int jobs = 1;
    SolveLimits limits;
};

using Task = std::pair<std::string, std::function<ReportEntry()>>;
// Runs tasks on a pool of jobs threads; entries come back sorted by key.
std::vector<ReportEntry> run_tasks(std::vector<Task> tasks, int jobs);

// What a characterization predicts for one precoloring.
enum class Expect { extends, fails, either };

// Solves every ring precoloring of g and compares with expect. Budget
// overruns make the entry skipped; a mismatch refutes it with a replayable
// counterexample.
ReportEntry check_characterization(const std::string& instance, const EmbeddedGraph& g,
                                   const std::function<Expect(const Coloring&)>& expect, const SolveLimits& limits);

// Largest prefix of the greedy patch set keeping the graph within max_vertices
// once extra vertices are added later; each patch adds patch_growth vertices
// (3 for the canonical patch). Patching a triangle vertex leaves two triangles
// behind, so avoid_triangles keeps the triangle count unchanged.
std::vector<int> budget_patch_set(const FamilyGraph& g, int extra_vertices, int max_vertices = 40,
                                  bool avoid_triangles = false, int patch_growth = 3);

enum class FramingSet { all, subset };

VerificationReport verify_col_tw(int n_max, FramingSet framings, bool patching, const SuiteOptions& opt = {});
// Checks one (possibly patched and framed) reduced Thomas-Walls graph; converse only when asked.
ReportEntry check_col_tw_instance(const std::string& instance, const FamilyGraph& g, bool converse,
                                  const SolveLimits& limits = {});

VerificationReport verify_col_htw(int n_max, const std::vector<HtwVariant>& variants, const SuiteOptions& opt = {});
ReportEntry check_col_htw_instance(const std::string& instance, const FamilyGraph& g, const SolveLimits& limits = {});

VerificationReport verify_tent(int depth_max, const SuiteOptions& opt = {});
ReportEntry check_tent_instance(const std::string& instance, const FamilyGraph& g, const SolveLimits& limits = {});

VerificationReport verify_patch_equiv(const std::vector<EmbeddedGraph>& patches, const SuiteOptions& opt = {});

// Instances of at most 14 vertices; non-quadrangulations are skipped.
VerificationReport verify_cylflow(const std::vector<std::pair<std::string, EmbeddedGraph>>& instances,
                                  const SuiteOptions& opt = {});
std::vector<std::pair<std::string, EmbeddedGraph>> default_cylflow_instances();

VerificationReport verify_col44(const std::vector<std::pair<std::string, EmbeddedGraph>>& instances,
                                const SuiteOptions& opt = {});
std::vector<std::pair<std::string, EmbeddedGraph>> default_col44_instances();

VerificationReport verify_col33(const std::vector<std::pair<std::string, EmbeddedGraph>>& instances,
                                const SuiteOptions& opt = {});
std::vector<std::pair<std::string, EmbeddedGraph>> default_col33_instances(int distance = 9);

struct ChaincolOptions {
    int n = 7;
    std::vector<std::string> subset = {"x7", "q5", "ev1", "tp1", "t1", "q1"};
    int samples = 10000;
    int min_length = 7;
    int max_length = 10;
    int cross_checks = 50;  // sampled chains also solved directly (<= 40 vertices)
    std::uint64_t seed = 1;
    std::string catalog_dir;  // empty = built-in location
};
VerificationReport verify_chaincol(const ChaincolOptions& copt, const SuiteOptions& opt = {});

// Identification steps (followed by collapsing touching triangles) on
// generated chains; each valid step checks that the result dominates the input.
VerificationReport verify_reductions(int steps, std::uint64_t seed, const SuiteOptions& opt = {});

// Every basic catalog graph is critical and a mutant with one pendant edge is not.
VerificationReport verify_criticality(std::uint64_t seed, const std::string& catalog_dir = "",
                                      const SuiteOptions& opt = {});
// Adds a new vertex joined by one edge to a vertex of a random non-hole face.
EmbeddedGraph add_pendant_edge(const EmbeddedGraph& g, std::uint64_t seed);

VerificationReport verify_crtri_families(int max_n, const SuiteOptions& opt = {});

// Names accepted by run_suite: col-tw, col-htw, tent, patch-equiv, cylflow,
// col44, col33, chaincol, reductions, criticality, crtri.
const std::vector<std::string>& suite_names();

}  // namespace cylcol
