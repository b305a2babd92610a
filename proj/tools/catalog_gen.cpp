// Rebuilds the shipped catalog files from the enumeration.
#include <cstdio>
#include <exception>
#include <string>

#include "cylcol/catalog.hpp"

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : cylcol::default_catalog_dir();
    try {
        auto graphs = cylcol::build_catalog();
        for (const auto& [id, g] : graphs) {
            auto why = cylcol::catalog_violation(id, g);
            if (!why.empty()) {
                std::fprintf(stderr, "%s: %s\n", id.c_str(), why.c_str());
                return 1;
            }
        }
        cylcol::write_catalog(dir, graphs);
        std::printf("wrote %zu graphs to %s\n", graphs.size(), dir.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "catalog_gen: %s\n", e.what());
        return 1;
    }
    return 0;
}
