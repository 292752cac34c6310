#include "qtv/asym.hpp"

#include <cmath>

namespace qtv {

Real phi(const ColoredTriangulation& ct, int r, double vol, prec_t initial_bits,
         const TvOptions& opt) {
    Root root = make_root(r, 2, initial_bits);
    InvariantValue v = tv(ct, root, opt);
    Complex value = v.value();
    if (value.is_zero()) throw LogOfZero("TV = 0: Phi undefined");
    prec_t p = v.prec;
    Real two_pi = Real::pi(p) + Real::pi(p);
    Real linear = Real(vol, p) * Real(static_cast<long>(r - 2), p) / two_pi;
    return log(abs(value)) - linear;
}

FitResult fit_logline(const std::vector<std::pair<int, double>>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw DegenerateFit("need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [r, y] : points) {
        double x = std::log(static_cast<double>(r - 2));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double nn = static_cast<double>(n);
    double det = nn * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * nn * (sxx + 1))
        throw DegenerateFit("all abscissae coincide");
    FitResult fit;
    fit.n_points = static_cast<int>(n);
    fit.slope = (nn * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / nn;
    double ss = 0;
    for (const auto& [r, y] : points) {
        double x = std::log(static_cast<double>(r - 2));
        double e = y - (fit.slope * x + fit.intercept);
        ss += e * e;
    }
    fit.rms_residual = std::sqrt(ss / nn);
    return fit;
}

Series series(const ColoredTriangulation& ct, const std::vector<int>& r_list, SeriesKind kind,
              std::optional<double> vol, prec_t initial_bits, const TvOptions& opt,
              const std::function<void(const SeriesPoint&)>& on_point) {
    Series out;
    switch (kind) {
        case SeriesKind::qv: out.label = "qv"; break;
        case SeriesKind::tv: out.label = "tv"; break;
        case SeriesKind::phi: out.label = "phi"; break;
    }
    if (!ct.name.empty()) out.label += ":" + ct.name;
    for (int r : r_list) {
        SeriesPoint pt;
        pt.r = r;
        pt.value = Complex(initial_bits);
        try {
            switch (kind) {
                case SeriesKind::tv: {
                    Root root = make_root(r, 2, initial_bits);
                    InvariantValue v = tv(ct, root, opt);
                    pt.value = v.value();
                    pt.verified_digits = v.verified_digits;
                    break;
                }
                case SeriesKind::qv: {
                    InvariantValue v = qv(ct, r, initial_bits, opt);
                    pt.value = v.value();
                    pt.verified_digits = v.verified_digits;
                    break;
                }
                case SeriesKind::phi: {
                    if (!vol) throw std::invalid_argument("phi series needs a volume");
                    Real f = phi(ct, r, *vol, initial_bits, opt);
                    pt.verified_digits = opt.requested_digits;
                    pt.value = Complex(std::move(f));
                    break;
                }
            }
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
        if (on_point) on_point(pt);
        out.points.push_back(std::move(pt));
    }
    return out;
}

}  // namespace qtv
