#include "cylcol/io.hpp"

#include <fstream>
#include <sstream>

namespace cylcol {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

int to_int(const std::string& tok, int line_no) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + tok + "'");
    }
}

}  // namespace

std::string write_graph(const EmbeddedGraph& g) {
    std::ostringstream out;
    out << "surface " << to_string(g.surface()) << "\n";
    out << "vertices " << g.n() << "\n";
    for (int v = 0; v < g.n(); ++v) {
        out << "rot " << v << ":";
        for (int w : g.rotation(v)) out << " " << w;
        out << "\n";
    }
    for (const auto& r : g.rings()) {
        out << "ring";
        for (int v : r) out << " " << v;
        out << "\n";
    }
    return out.str();
}

EmbeddedGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int n = -1;
    bool have_surface = false;
    Surface surface = Surface::sphere;
    std::vector<std::vector<int>> rot;
    std::vector<bool> seen;
    std::vector<Cycle> rings;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "surface") {
            std::string name;
            if (!(ls >> name)) throw ParseError("line " + std::to_string(line_no) + ": missing surface name");
            try {
                surface = parse_surface(name);
            } catch (const GraphError& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
            have_surface = true;
        } else if (key == "vertices") {
            std::string tok;
            if (!(ls >> tok)) throw ParseError("line " + std::to_string(line_no) + ": missing vertex count");
            n = to_int(tok, line_no);
            if (n < 1) throw ParseError("line " + std::to_string(line_no) + ": vertex count must be positive");
            rot.assign(n, {});
            seen.assign(n, false);
        } else if (key == "rot") {
            if (n < 0) throw ParseError("line " + std::to_string(line_no) + ": 'rot' before 'vertices'");
            std::string head;
            if (!(ls >> head) || head.back() != ':')
                throw ParseError("line " + std::to_string(line_no) + ": expected 'rot <v>:'");
            int v = to_int(head.substr(0, head.size() - 1), line_no);
            if (v < 0 || v >= n) throw ParseError("line " + std::to_string(line_no) + ": vertex out of range");
            if (seen[v]) throw ParseError("line " + std::to_string(line_no) + ": duplicate rotation");
            seen[v] = true;
            std::string tok;
            while (ls >> tok) rot[v].push_back(to_int(tok, line_no));
        } else if (key == "ring") {
            Cycle c;
            std::string tok;
            while (ls >> tok) c.push_back(to_int(tok, line_no));
            rings.push_back(c);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown keyword '" + key + "'");
        }
    }
    if (!have_surface) throw ParseError("missing 'surface' line");
    if (n < 0) throw ParseError("missing 'vertices' line");
    try {
        return build_graph(n, std::move(rot), std::move(rings), surface);
    } catch (const GraphError& e) {
        throw ParseError(std::string("invalid graph: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

EmbeddedGraph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

void write_graph_file(const std::string& path, const EmbeddedGraph& g) { write_text_file(path, write_graph(g)); }

std::string write_coloring(const Coloring& c) {
    std::ostringstream out;
    for (size_t v = 0; v < c.size(); ++v)
        if (c[v] >= 0) out << "color " << v << " " << c[v] << "\n";
    return out.str();
}

Coloring parse_coloring(const std::string& text, int n) {
    Coloring c(n, -1);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        std::string key, vt, ct;
        if (!(ls >> key)) continue;
        if (key != "color" || !(ls >> vt >> ct))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'color <vertex> <0|1|2>'");
        int v = to_int(vt, line_no), col = to_int(ct, line_no);
        if (v < 0 || v >= n) throw ParseError("line " + std::to_string(line_no) + ": vertex out of range");
        if (col < 0 || col > 2) throw ParseError("line " + std::to_string(line_no) + ": color must be 0, 1 or 2");
        if (c[v] >= 0 && c[v] != col) throw ParseError("line " + std::to_string(line_no) + ": conflicting colors");
        c[v] = col;
    }
    return c;
}

Coloring read_coloring_file(const std::string& path, int n) { return parse_coloring(read_text_file(path), n); }

}  // namespace cylcol
