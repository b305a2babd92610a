#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cylcol/coloring.hpp"
#include "cylcol/embedding.hpp"

namespace cylcol {

// Exit codes shared by every verb.
enum ExitCode : int { exit_ok = 0, exit_negative = 1, exit_usage = 2 };

// Graphviz text with ring vertices and edges marked; colors become labels.
std::string export_dot(const EmbeddedGraph& g, const Coloring* coloring = nullptr);

// Runs one command line (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cylcol
