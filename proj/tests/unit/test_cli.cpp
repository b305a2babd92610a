#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"

#include "cylcol/cli.hpp"
#include "cylcol/families.hpp"
#include "cylcol/io.hpp"

using namespace cylcol;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

int count_matches(const std::string& text, const std::regex& re) {
    return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

EmbeddedGraph k4() {
    return build_graph(4, {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}, {}, Surface::sphere);
}

}  // namespace

TEST_CASE("gen prints the same graph the library builds") {
    auto r = cli({"gen", "reduced-thomas-walls", "--n", "3"});
    CHECK(r.code == exit_ok);
    CHECK(r.out == write_graph(reduced_thomas_walls(3).graph));

    auto t = cli({"gen", "tent", "--left", "1", "--right", "2"});
    CHECK(t.code == exit_ok);
    CHECK(parse_graph(t.out).n() == tent(1, 2).graph.n());
}

TEST_CASE("exit codes separate success, a negative answer and bad usage") {
    auto dir = fs::temp_directory_path() / "cylcol_cli_unit";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto k4_file = (dir / "k4.graph").string();
    write_graph_file(k4_file, k4());
    auto solved = cli({"solve", k4_file});
    CHECK(solved.code == exit_negative);
    CHECK(solved.out.find("UNSAT") != std::string::npos);

    auto tent_file = (dir / "tent.graph").string();
    write_graph_file(tent_file, tent(0, 0).graph);
    auto ok = cli({"solve", tent_file});
    CHECK(ok.code == exit_ok);
    auto c = parse_coloring(ok.out, tent(0, 0).graph.n());
    CHECK(oracle::extends(tent(0, 0).graph, c));

    CHECK(cli({}).code == exit_usage);
    CHECK(cli({"nonsense"}).code == exit_usage);
    CHECK(cli({"solve", (dir / "absent.graph").string()}).code == exit_usage);
    CHECK(cli({"verify", "no-such-suite"}).code == exit_usage);
    CHECK(cli({"gen", "tent", "--left", "-1"}).code == exit_usage);
    CHECK(cli({"--help"}).code == exit_ok);
    fs::remove_all(dir);
}

TEST_CASE("a dot drawing of K4 has four nodes and six edges") {
    auto dot = export_dot(k4());
    CHECK(dot.rfind("graph G {", 0) == 0);
    CHECK(count_matches(dot, std::regex(R"(\n  \d+ \[)")) == 4);
    CHECK(count_matches(dot, std::regex(R"(\d+ -- \d+)")) == 6);
    CHECK(dot.find("doublecircle") == std::string::npos);
}

TEST_CASE("dot drawings mark rings and colors") {
    auto g = tent(0, 0).graph;
    auto dot = export_dot(g);
    CHECK(count_matches(dot, std::regex("doublecircle")) == 4);
    CHECK(count_matches(dot, std::regex("penwidth=2")) == 4);
    CHECK(dot.find("// ring 0: 0 1 2 3") != std::string::npos);

    Coloring c(g.n(), -1);
    c[0] = 2;
    auto colored = export_dot(g, &c);
    CHECK(colored.find("label=\"0:2\"") != std::string::npos);
    CHECK(count_matches(colored, std::regex("fillcolor")) == 1);
}

TEST_CASE("verify prints a summary and fails on refutation only") {
    auto r = cli({"verify", "tent", "--depth-max", "0", "--no-timing"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("summary suite=tent instances=1 confirmed=1") != std::string::npos);
}
