#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qtv/arith.hpp"

namespace qtv {

struct SyntaxError : std::runtime_error {
    SyntaxError(int line, int col, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + what),
          line(line),
          col(col) {}
    int line, col;
};
struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyTriangulation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownCensusName : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Edge classes of one tetrahedron in the slot order
/// (e12, e13, e23, e34, e24, e14); this matches the 6j placement
/// |c(e12) c(e13) c(e23); c(e34) c(e24) c(e14)| so opposite edges sit in
/// the same column.
using Tet = std::array<int, 6>;

struct ColoredTriangulation {
    std::string name;
    int num_edge_classes = 0;
    std::vector<Tet> tets;
};

/// Reference geometry quoted from SnapPy/Regina, used only as comparison
/// targets (never in computation). vol is the hyperbolic volume; cs, when
/// present, is the Chern-Simons invariant multiplied by 2*pi^2.
struct ManifoldMeta {
    double vol = 0.0;
    std::optional<double> cs;
    std::string source;
};

struct Diagnostic {
    enum class Severity { info, warning, error };
    Severity severity;
    std::string message;
};

/// Parses the qtv-v1 format. Throws SyntaxError / IndexError /
/// EmptyTriangulation with position information.
ColoredTriangulation parse(const std::string& text);

std::string serialize(const ColoredTriangulation& ct);

/// Unused-class warnings and per-class multiplicity info; never mutates.
std::vector<Diagnostic> validate(const ColoredTriangulation& ct);

/// Built-in census entries:
/// unknot, trefoil, hopf, t24, t26, fig8, fig8_sister, k52, m36, k61,
/// gieseking, n21, mmin. Throws UnknownCensusName.
std::pair<ColoredTriangulation, std::optional<ManifoldMeta>> census(const std::string& name);

std::vector<std::string> census_names();

/// FNV-1a over the structural content (edge count + tet slots, not the
/// name); used as the CLI result-cache key component.
std::uint64_t structural_hash(const ColoredTriangulation& ct);

}  // namespace qtv
