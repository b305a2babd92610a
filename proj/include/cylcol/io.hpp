#pragma once

#include <string>
#include <vector>

#include "cylcol/embedding.hpp"

namespace cylcol {

// Per-vertex colors in {0,1,2}; -1 marks an uncolored vertex.
using Coloring = std::vector<int>;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string write_graph(const EmbeddedGraph& g);
EmbeddedGraph parse_graph(const std::string& text);
EmbeddedGraph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const EmbeddedGraph& g);

// Only colored vertices are written.
std::string write_coloring(const Coloring& c);
Coloring parse_coloring(const std::string& text, int n);
Coloring read_coloring_file(const std::string& path, int n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cylcol
