#pragma once

#include <functional>
#include <optional>

#include "qtv/statesum.hpp"

namespace qtv {

struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Phi_r(M) = ln TV_r(M; e^{2 pi i/r}) - (r-2)/(2 pi) * vol.
/// TV_r can be negative at some r (mmin); |TV| is used then, which matches
/// dropping the 2 pi^2/(r-2) imaginary part of QV_r.
Real phi(const ColoredTriangulation& ct, int r, double vol, prec_t initial_bits = 256,
         const TvOptions& opt = {});

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
    int n_points = 0;
};

/// Ordinary least squares of phi against ln(r-2). Throws DegenerateFit when
/// fewer than two points or all abscissae coincide.
FitResult fit_logline(const std::vector<std::pair<int, double>>& points);

enum class SeriesKind { qv, tv, phi };

struct SeriesPoint {
    int r = 0;
    Complex value{prec_t{64}};
    bool ok = false;
    std::string error;
    int verified_digits = 0;
};

struct Series {
    std::string label;
    std::vector<SeriesPoint> points;
};

/// Evaluates the requested quantity at each r. A failing point is marked and
/// kept; the sweep continues. `on_point` (when given) streams each point as
/// it is computed, in r order.
Series series(const ColoredTriangulation& ct, const std::vector<int>& r_list, SeriesKind kind,
              std::optional<double> vol = std::nullopt, prec_t initial_bits = 256,
              const TvOptions& opt = {},
              const std::function<void(const SeriesPoint&)>& on_point = nullptr);

}  // namespace qtv
