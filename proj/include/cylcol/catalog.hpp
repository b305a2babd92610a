#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cylcol/embedding.hpp"
#include "cylcol/families.hpp"

namespace cylcol {

// Basic cylinder graphs with contractible 4-cycles (ids q1..q5, ev1, ev2,
// t1, t2, tp1, tp2, s1, s2, x1..x7, j1) and the four identification
// results i1..i4. Ids double as data file stems.
const std::vector<std::string>& basic_ids();
const std::vector<std::string>& identification_ids();
std::vector<std::string> catalog_ids();
// Human form, e.g. "tp1" -> "T'1".
std::string display_name(const std::string& id);

// Every graph of the catalog, reconstructed from scratch. Throws if the
// enumeration does not produce the expected number of classes.
std::map<std::string, EmbeddedGraph> build_catalog();

// Cylinder graphs whose vertices all lie on the rings (lengths p, q) with
// m non-hole faces of length >= 4, one representative per ring-preserving
// isomorphism class, filtered to tame critical graphs with a 4-face.
std::vector<EmbeddedGraph> ring_only_basic(int p, int q, int m);

// Canonical edge list under ring rotations, reflections and (equal lengths) swaps.
std::vector<Edge> ring_canonical_form(const EmbeddedGraph& g);

std::uint64_t fnv1a64(const std::string& data);

// Writes <id>.graph files and a MANIFEST of checksums.
void write_catalog(const std::string& dir, const std::map<std::string, EmbeddedGraph>& graphs);

// Loads and validates the shipped catalog. Throws GraphError on a missing
// file, checksum mismatch or failed structural check.
std::map<std::string, FamilyGraph> basic_catalog(const std::string& dir);
// $CYLCOL_DATA/catalog when set, else the directory configured at build time.
std::string default_catalog_dir();

// Structural check of one entry; empty string when it passes.
std::string catalog_violation(const std::string& id, const EmbeddedGraph& g);

}  // namespace cylcol
