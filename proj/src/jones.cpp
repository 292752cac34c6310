#include "qtv/jones.hpp"

#include <omp.h>

#include <algorithm>

namespace qtv {

const char* knot_name(Knot k) { return k == Knot::fig8 ? "fig8" : "k52"; }

std::optional<Knot> knot_from_name(const std::string& name) {
    if (name == "fig8" || name == "4_1") return Knot::fig8;
    if (name == "k52" || name == "5_2") return Knot::k52;
    return std::nullopt;
}

namespace {

// (q^{n-i} - q^{-n+i})(q^{n+i} - q^{-n-i}) for the running products.
Complex pair_factor(int n, int i, const Root& root) {
    Complex f1 = root.qpower(n - i) - root.qpower(-(n - i));
    Complex f2 = root.qpower(n + i) - root.qpower(-(n + i));
    return f1 * f2;
}

}  // namespace

Complex jones_fig8(int n, const Root& root) {
    prec_t p = root.prec();
    Complex sum(Real(1L, p));  // k = 0: empty product
    Complex prod(Real(1L, p));
    for (int k = 1; k <= n - 1; ++k) {
        prod = prod * pair_factor(n, k, root);
        sum = sum + prod;
    }
    return sum;
}

Complex jones_52_coefficient(int k, const Root& root) {
    prec_t p = root.prec();
    Complex inner(p);
    for (int i = 0; i <= k; ++i) {
        Real binom = root.quantum_factorial(k) /
                     (root.quantum_factorial(i) * root.quantum_factorial(k - i));
        long long e = static_cast<long long>(i) * i - 2ll * i - 3ll * k * i;
        inner = inner + root.qpower(e) * binom;
    }
    // k(5k+7) is always even, so the exponent is an integer.
    Complex ck = inner * root.qpower(static_cast<long long>(k) * (5ll * k + 7) / 2);
    return (k & 1) ? -ck : ck;
}

Complex jones_52(int n, const Root& root) {
    prec_t p = root.prec();
    Complex sum(p);
    Complex prod(Real(1L, p));
    for (int k = 0; k <= n - 1; ++k) {
        if (k > 0) prod = prod * pair_factor(n, k, root);
        // k(k+3) is always even.
        Complex term = root.qpower(static_cast<long long>(k) * (k + 3) / 2) *
                       jones_52_coefficient(k, root) * prod;
        sum = sum + term;
    }
    return sum;
}

std::vector<Complex> jones_all(Knot knot, const Root& root) {
    const int r = root.r();
    prec_t p = root.prec();
    std::vector<Complex> J;
    J.reserve(static_cast<std::size_t>(r - 1));
    if (knot == Knot::fig8) {
        for (int n = 1; n <= r - 1; ++n) J.push_back(jones_fig8(n, root));
        return J;
    }
    std::vector<Complex> ck;
    ck.reserve(static_cast<std::size_t>(r - 1));
    for (int k = 0; k <= r - 2; ++k) ck.push_back(jones_52_coefficient(k, root));
    for (int n = 1; n <= r - 1; ++n) {
        Complex sum(p);
        Complex prod(Real(1L, p));
        for (int k = 0; k <= n - 1; ++k) {
            if (k > 0) prod = prod * pair_factor(n, k, root);
            sum = sum + root.qpower(static_cast<long long>(k) * (k + 3) / 2) *
                            ck[static_cast<std::size_t>(k)] * prod;
        }
        J.push_back(std::move(sum));
    }
    return J;
}

namespace {

struct Kahan {
    Complex sum, comp;
    explicit Kahan(prec_t p) : sum(p), comp(p) {}
    void add(const Complex& term) {
        Complex y = term - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void validate_surgery(const SurgerySpec& spec) {
    if (spec.p == 0) throw std::invalid_argument("surgery coefficient p must be nonzero");
    if (spec.r < 3 || spec.r % 2 == 0)
        throw InvalidRoot("surgery level r must be odd and >= 3, got " + std::to_string(spec.r));
}

}  // namespace

Complex rt_surgery_fixed(const SurgerySpec& spec, prec_t bits, int threads) {
    validate_surgery(spec);
    const int r = spec.r;
    Root root = make_root(r, 2, bits);
    std::vector<Complex> J = jones_all(spec.knot, root);

    // Prefactor phase: ((3+r^2)/r - (3-r)/4) = (5r^2 - 3r + 12)/(4r); reduce
    // the numerator mod 8r so the angle stays small at every r.
    long long num = (5ll * r * r - 3ll * r + 12) % (8ll * r);
    Real angle = Real(static_cast<long>(num), bits) * root.pi() /
                 Real(static_cast<long>(4 * r), bits);
    Complex pref = Complex(cos(angle), sin(angle)) *
                   (Real(2L, bits) / Real(static_cast<long>(r), bits));

    const long long two_r = 2ll * r;
    std::vector<Complex> terms;
    terms.reserve(static_cast<std::size_t>(r - 1));
    for (int n = 0; n <= r - 2; ++n) terms.emplace_back(bits);

    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int n = 0; n <= r - 2; ++n) {
        // (-e^{pi i/r})^{-p(n^2+2n)} = e^{pi i m (r+1)/r}, m reduced mod 2r.
        long long m = (static_cast<long long>(n) * n + 2ll * n) % two_r;
        m = (m * (-(static_cast<long long>(spec.p)) % two_r)) % two_r;
        const Complex& phase = root.unit_phase(m * (r + 1));
        const Real& s = root.unit_phase(2ll * (n + 1)).im();  // sin(2(n+1)pi/r)
        terms[static_cast<std::size_t>(n)] = (s * s) * phase * J[static_cast<std::size_t>(n)];
    }

    Kahan acc(bits);
    for (const auto& t : terms) acc.add(t);
    return pref * acc.sum;
}

InvariantValue rt_surgery(const SurgerySpec& spec, prec_t initial_bits, int requested_digits,
                          prec_t max_bits, int threads) {
    VerifyOptions vo{initial_bits, requested_digits, max_bits};
    return eval_verified([&](prec_t p) { return rt_surgery_fixed(spec, p, threads); }, vo);
}

namespace {

Real reduce_mod_pi_squared(const Real& x, const Real& window_lo, const Real& pi2) {
    Real k = x - window_lo;
    k /= pi2;
    mpfr_floor(k.raw(), k.raw());
    return x - k * pi2;
}

struct QrEval {
    Complex reduced;
    Real im_raw;
};

QrEval qr_once(Knot knot, int p, int r, const std::optional<double>& target_im, prec_t bits,
               int threads) {
    Complex tau_hi = rt_surgery_fixed({knot, p, r}, bits, threads);
    Complex tau_lo = rt_surgery_fixed({knot, p, r - 2}, bits, threads);
    if (tau_lo.is_zero()) throw DivisionByZero("tau_{r-2} vanishes");
    Complex ratio = tau_hi / tau_lo;
    Real two_pi = Real::pi(bits) + Real::pi(bits);
    Complex val = principal_log(ratio) * two_pi;
    Real pi2 = Real::pi(bits) * Real::pi(bits);
    Real lo = target_im ? Real(*target_im, bits) - pi2 / Real(2L, bits) : Real(bits);
    Real reduced_im = reduce_mod_pi_squared(val.im(), lo, pi2);
    return {Complex(val.re(), std::move(reduced_im)), val.im()};
}

}  // namespace

QrResult qr(Knot knot, int p, int r, const QrOptions& opt) {
    if (p == 0) throw std::invalid_argument("surgery coefficient p must be nonzero");
    if (r % 2 == 0 || r < 7)
        throw InvalidRoot("Q_r requires odd r >= 7, got " + std::to_string(r));
    prec_t bits = opt.initial_bits;
    QrEval lo = qr_once(knot, p, r, opt.target_im, bits, opt.threads);
    for (;;) {
        prec_t hi_bits = 2 * bits;
        if (hi_bits > opt.max_bits)
            throw PrecisionExhausted("requested verified digits unreachable at precision cap " +
                                     std::to_string(opt.max_bits) + " bits");
        QrEval hi = qr_once(knot, p, r, opt.target_im, hi_bits, opt.threads);
        int digits = agreeing_decimal_digits(lo.reduced, hi.reduced);
        if (digits >= opt.requested_digits)
            return QrResult{hi.reduced, hi.im_raw, hi_bits, digits};
        bits = hi_bits;
        lo = std::move(hi);
    }
}

std::optional<std::pair<double, double>> surgery_target(Knot knot, int p) {
    if (knot == Knot::fig8) {
        switch (p) {
            case -6: return {{1.28449, -1.34092}};
            case -5: return {{0.98137, -1.52067}};
            case 5: return {{0.98137, 1.52067}};
            case 6: return {{1.28449, 1.34092}};
            case 7: return {{1.46378, 1.19653}};
            case 8: return {{1.58317, 1.07850}};
            default: return std::nullopt;
        }
    }
    switch (p) {
        case -3: return {{2.10310, -4.45132}};
        case -2: return {{1.84359, -4.63884}};
        case -1: return {{1.39851, -4.86783}};
        case 5: return {{0.98137, -1.52067}};
        case 6: return {{1.41406, -1.51206}};
        case 7: return {{1.75713, -1.55255}};
        default: return std::nullopt;
    }
}

}  // namespace qtv
