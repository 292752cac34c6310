#pragma once

#include <optional>
#include <vector>

#include "qtv/arith.hpp"

namespace qtv {

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Knot { fig8, k52 };

const char* knot_name(Knot k);
std::optional<Knot> knot_from_name(const std::string& name);

/// p-surgery along `knot` evaluated at level r (odd).
struct SurgerySpec {
    Knot knot;
    int p;
    int r;
};

/// n-th colored Jones polynomial of the figure-eight knot at the root's q,
/// normalized so J_n(unknot) = 1. Incremental products, O(n).
Complex jones_fig8(int n, const Root& root);

/// Same for the 5_2 knot (double sum with the c_k coefficients).
Complex jones_52(int n, const Root& root);

/// c_k coefficient of the 5_2 formula.
Complex jones_52_coefficient(int k, const Root& root);

/// J_1 .. J_{r-1} at the root's q in one pass (the c_k table is shared, so
/// the whole vector costs O(r^2)).
std::vector<Complex> jones_all(Knot knot, const Root& root);

/// Reshetikhin-Turaev-Lickorish invariant of the p-surgery along the knot at
/// q = e^{2 pi i / r}, by the surgery formula
///   (2/r) e^{((3+r^2)/r - (3-r)/4) pi i}
///     sum_{n=0}^{r-2} sin(2(n+1)pi/r)^2 (-e^{pi i/r})^{-p(n^2+2n)} J_{n+1}.
/// The phase exponents are reduced exactly as integers mod 2r before any
/// floating evaluation. The n-loop parallelizes with ordered reduction.
Complex rt_surgery_fixed(const SurgerySpec& spec, prec_t bits, int threads = 1);
InvariantValue rt_surgery(const SurgerySpec& spec, prec_t initial_bits = 256,
                          int requested_digits = 12, prec_t max_bits = 1 << 14, int threads = 1);

struct QrOptions {
    prec_t initial_bits = 256;
    int requested_digits = 12;
    prec_t max_bits = 1 << 14;
    int threads = 1;
    /// Center of the mod-pi^2 reduction window for the imaginary part; when
    /// absent the representative in [0, pi^2) is taken.
    std::optional<double> target_im;
};

struct QrResult {
    Complex value;     ///< 2 pi log(tau_r / tau_{r-2}), Im reduced mod pi^2
    Real im_raw;       ///< un-reduced imaginary part (principal arg in [0, 2 pi))
    prec_t prec;
    int verified_digits;
};

/// Q_r(M) = 2 pi log(tau_r(q_r) / tau_{r-2}(q_{r-2})), r odd >= 7.
QrResult qr(Knot knot, int p, int r, const QrOptions& opt = {});

/// Vol + i CS of the surgered manifold as quoted from SnapPy, for the twelve
/// tabulated surgeries; comparison targets only.
std::optional<std::pair<double, double>> surgery_target(Knot knot, int p);

}  // namespace qtv
