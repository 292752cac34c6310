#include "qtv/arith.hpp"

#include <cmath>
#include <numeric>

namespace qtv {

std::string Real::str(int significant_digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(significant_digits), v_,
                           MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    // mpfr convention: value = 0.digits * 10^e
    std::string out;
    if (e >= 1 && e <= significant_digits + 3) {
        if (static_cast<std::size_t>(e) >= digits.size())
            out = digits + std::string(static_cast<std::size_t>(e) - digits.size(), '0');
        else
            out = digits.substr(0, static_cast<std::size_t>(e)) + "." +
                  digits.substr(static_cast<std::size_t>(e));
    } else if (e <= 0 && e > -4) {
        out = "0." + std::string(static_cast<std::size_t>(-e), '0') + digits;
    } else {
        std::string mant = digits;
        while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(e - 1);
        return neg ? "-" + out : out;
    }
    // strip trailing zeros after a decimal point
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

Complex signed_sqrt(const Real& x) {
    prec_t p = x.prec();
    if (x.sign() >= 0) return Complex(sqrt(x), Real(p));
    return Complex(Real(p), sqrt(-x));
}

Complex principal_log(const Complex& z) {
    if (z.is_zero()) throw LogOfZero("principal_log of zero");
    Real a = atan2(z.im(), z.re());
    if (a.sign() < 0) a += Real::pi(a.prec()) + Real::pi(a.prec());
    return Complex(log(abs(z)), std::move(a));
}

int decimal_capacity(prec_t prec) {
    return static_cast<int>(static_cast<double>(prec) * 0.30103);
}

int agreeing_decimal_digits(const Real& a, const Real& b) {
    int cap = decimal_capacity(std::min(a.prec(), b.prec()));
    Real diff = abs(a - b);
    if (diff.is_zero()) return cap;
    Real scale = abs(b);
    if (scale < Real(1L, scale.prec())) scale = Real(1L, scale.prec());
    double d = -log10(diff / scale).to_double();
    if (d < 0) return 0;
    return std::min(cap, static_cast<int>(d));
}

int agreeing_decimal_digits(const Complex& a, const Complex& b) {
    int cap = decimal_capacity(std::min(a.prec(), b.prec()));
    Real diff = abs(a - b);
    if (diff.is_zero()) return cap;
    Real scale = abs(b);
    if (scale < Real(1L, scale.prec())) scale = Real(1L, scale.prec());
    double d = -log10(diff / scale).to_double();
    if (d < 0) return 0;
    return std::min(cap, static_cast<int>(d));
}

bool valid_root(int r, int k) {
    return r >= 3 && k >= 1 && k < 2 * r && std::gcd(k, r) == 1;
}

Root make_root(int r, int k, prec_t prec) {
    if (r < 3) throw InvalidRoot("level r must be >= 3, got " + std::to_string(r));
    if (k < 1 || k >= 2 * r)
        throw InvalidRoot("root index k must satisfy 1 <= k < 2r, got k=" + std::to_string(k));
    if (std::gcd(k, r) != 1)
        throw InvalidRoot("gcd(k, r) != 1 for k=" + std::to_string(k) + ", r=" + std::to_string(r) +
                          ": q^2 is not a primitive root of degree r");
    return Root(r, k, prec);
}

Root::Root(int r, int k, prec_t prec) : r_(r), k_(k), prec_(prec), pi_(Real::pi(prec)) {
    // [n] = sin(nk*pi/r)/sin(k*pi/r); the largest index needed anywhere is
    // [z+1]! with z+1 <= 2r-3 in the 6j sum, so fill through 2r.
    std::size_t n_max = static_cast<std::size_t>(2 * r);
    qint_.reserve(n_max + 1);
    Real rr(static_cast<long>(r), prec);
    Real denom = sin(Real(static_cast<long>(k), prec) * pi_ / rr);
    for (std::size_t n = 0; n <= n_max; ++n) {
        Real arg = Real(static_cast<long>(n) * k, prec) * pi_ / rr;
        qint_.push_back(sin(arg) / denom);
    }
    qfact_.reserve(n_max + 1);
    qfact_.emplace_back(1L, prec);
    for (std::size_t n = 1; n <= n_max; ++n) qfact_.push_back(qfact_[n - 1] * qint_[n]);

    qpow_.reserve(n_max);
    for (std::size_t t = 0; t < n_max; ++t) {
        Real arg = Real(static_cast<long>(t), prec) * pi_ / rr;
        qpow_.emplace_back(cos(arg), sin(arg));
    }
}

}  // namespace qtv
