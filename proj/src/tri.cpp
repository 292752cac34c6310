#include "qtv/tri.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qtv {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
};

// Token = maximal run of non-space characters; '#' discards to end of line.
std::optional<std::string> next_token(Cursor& c, int* tok_line, int* tok_col) {
    for (;;) {
        while (!c.eof() && (c.peek() == ' ' || c.peek() == '\t' || c.peek() == '\r' ||
                            c.peek() == '\n'))
            c.advance();
        if (c.eof()) return std::nullopt;
        if (c.peek() == '#') {
            while (!c.eof() && c.peek() != '\n') c.advance();
            continue;
        }
        break;
    }
    *tok_line = c.line;
    *tok_col = c.col;
    std::string tok;
    while (!c.eof() && c.peek() != ' ' && c.peek() != '\t' && c.peek() != '\r' &&
           c.peek() != '\n' && c.peek() != '#') {
        tok += c.peek();
        c.advance();
    }
    return tok;
}

int parse_int(const std::string& tok, int line, int col) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw SyntaxError(line, col, "expected integer, got '" + tok + "'");
    }
}

}  // namespace

ColoredTriangulation parse(const std::string& text) {
    Cursor c{text};
    int ln = 1, cl = 1;

    auto expect = [&](const char* what) {
        auto tok = next_token(c, &ln, &cl);
        if (!tok) throw SyntaxError(c.line, c.col, std::string("unexpected end of input, expected ") + what);
        return *tok;
    };

    if (expect("'qtv-triangulation'") != "qtv-triangulation")
        throw SyntaxError(ln, cl, "missing 'qtv-triangulation' header");
    if (expect("version 'v1'") != "v1") throw SyntaxError(ln, cl, "unsupported format version");

    ColoredTriangulation ct;
    bool have_edges = false;
    for (;;) {
        auto tok = next_token(c, &ln, &cl);
        if (!tok) break;
        if (*tok == "name") {
            ct.name = expect("a name");
        } else if (*tok == "edges") {
            ct.num_edge_classes = parse_int(expect("edge-class count"), ln, cl);
            if (ct.num_edge_classes < 1)
                throw SyntaxError(ln, cl, "edge-class count must be >= 1");
            have_edges = true;
        } else if (*tok == "tet") {
            if (!have_edges) throw SyntaxError(ln, cl, "'tet' before 'edges'");
            Tet t;
            for (auto& slot : t) {
                slot = parse_int(expect("edge-class index"), ln, cl);
                if (slot < 0 || slot >= ct.num_edge_classes)
                    throw IndexError("edge class " + std::to_string(slot) +
                                     " out of range [0, " +
                                     std::to_string(ct.num_edge_classes) + ") at line " +
                                     std::to_string(ln));
            }
            ct.tets.push_back(t);
        } else {
            throw SyntaxError(ln, cl, "unknown directive '" + *tok + "'");
        }
    }
    if (!have_edges) throw SyntaxError(c.line, c.col, "missing 'edges' directive");
    if (ct.tets.empty()) throw EmptyTriangulation("triangulation has no tetrahedra");
    return ct;
}

std::string serialize(const ColoredTriangulation& ct) {
    std::ostringstream out;
    out << "qtv-triangulation v1\n";
    if (!ct.name.empty()) out << "name " << ct.name << "\n";
    out << "edges " << ct.num_edge_classes << "\n";
    for (const auto& t : ct.tets) {
        out << "tet";
        for (int slot : t) out << ' ' << slot;
        out << "\n";
    }
    return out.str();
}

std::vector<Diagnostic> validate(const ColoredTriangulation& ct) {
    std::vector<Diagnostic> out;
    if (ct.tets.empty()) {
        out.push_back({Diagnostic::Severity::error, "no tetrahedra"});
        return out;
    }
    std::vector<int> mult(static_cast<std::size_t>(ct.num_edge_classes), 0);
    for (const auto& t : ct.tets)
        for (int slot : t) {
            if (slot < 0 || slot >= ct.num_edge_classes) {
                out.push_back({Diagnostic::Severity::error,
                               "edge class " + std::to_string(slot) + " out of range"});
                return out;
            }
            ++mult[static_cast<std::size_t>(slot)];
        }
    for (int e = 0; e < ct.num_edge_classes; ++e) {
        if (mult[static_cast<std::size_t>(e)] == 0)
            out.push_back({Diagnostic::Severity::warning,
                           "edge class " + std::to_string(e) + " unused"});
        else
            out.push_back({Diagnostic::Severity::info,
                           "edge class " + std::to_string(e) + " multiplicity " +
                               std::to_string(mult[static_cast<std::size_t>(e)])});
    }
    return out;
}

namespace {

struct CensusEntry {
    int edges;
    std::vector<Tet> tets;
    std::optional<ManifoldMeta> meta;
};

// Tet slot patterns transcribed from the displayed TV formulas, with slot
// order (e12,e13,e23,e34,e24,e14). Indices: 0=a, 1=b, 2=c, 3=d.
const std::map<std::string, CensusEntry>& census_table() {
    static const std::map<std::string, CensusEntry> table = {
        // The fig8 arrangement puts a on {e12,e13,e24}: every face then reads
        // (a,a,b) or (a,b,b), matching the admissibility set of the knot's
        // two-edge triangulation. Its sister has the identical pattern.
        {"fig8", {2, {{0, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 0, 1}}, ManifoldMeta{2.02988, {}, "SnapPy"}}},
        {"fig8_sister",
         {2, {{0, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 0, 1}}, ManifoldMeta{2.02988, {}, "Regina"}}},
        {"k52",
         {3,
          {{0, 0, 1, 1, 2, 2}, {0, 0, 1, 1, 2, 2}, {0, 1, 2, 1, 1, 2}},
          ManifoldMeta{2.82812, {}, "SnapPy"}}},
        {"m36",
         {3,
          {{0, 0, 1, 1, 2, 2}, {0, 0, 1, 1, 2, 2}, {0, 1, 2, 0, 0, 2}},
          ManifoldMeta{2.82812, {}, "Regina"}}},
        {"k61",
         {4,
          {{0, 0, 1, 0, 3, 1}, {0, 2, 2, 1, 1, 3}, {1, 1, 2, 0, 2, 3}, {1, 1, 2, 1, 3, 2}},
          ManifoldMeta{3.163963, {}, "SnapPy"}}},
        {"gieseking", {1, {{0, 0, 0, 0, 0, 0}}, ManifoldMeta{1.014942, {}, "SnapPy"}}},
        {"n21",
         {2, {{0, 1, 1, 0, 1, 1}, {0, 1, 1, 0, 1, 1}}, ManifoldMeta{1.831931, {}, "SnapPy"}}},
        {"mmin",
         {1, {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}}, ManifoldMeta{6.452, {}, "Kojima-Miyamoto"}}},
        {"unknot", {2, {{0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0}}, std::nullopt}},
        {"trefoil", {2, {{0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 1}}, std::nullopt}},
        {"hopf",
         {3, {{0, 0, 0, 0, 0, 2}, {0, 0, 0, 1, 1, 1}, {0, 0, 0, 1, 1, 1}}, std::nullopt}},
        {"t24",
         {4,
          {{0, 0, 1, 2, 2, 2}, {0, 0, 1, 2, 2, 2}, {1, 1, 1, 0, 0, 3}, {1, 1, 1, 0, 0, 0}},
          std::nullopt}},
        {"t26",
         {4,
          {{0, 0, 2, 1, 1, 0}, {0, 0, 2, 1, 1, 0}, {1, 1, 2, 1, 1, 1}, {1, 1, 3, 1, 1, 2}},
          std::nullopt}},
    };
    return table;
}

}  // namespace

std::pair<ColoredTriangulation, std::optional<ManifoldMeta>> census(const std::string& name) {
    auto it = census_table().find(name);
    if (it == census_table().end()) throw UnknownCensusName("unknown census name '" + name + "'");
    ColoredTriangulation ct;
    ct.name = name;
    ct.num_edge_classes = it->second.edges;
    ct.tets = it->second.tets;
    return {ct, it->second.meta};
}

std::vector<std::string> census_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : census_table()) names.push_back(k);
    return names;
}

std::uint64_t structural_hash(const ColoredTriangulation& ct) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(ct.num_edge_classes));
    for (const auto& t : ct.tets)
        for (int slot : t) mix(static_cast<std::uint64_t>(slot) + 0x9e37);
    return h;
}

}  // namespace qtv
