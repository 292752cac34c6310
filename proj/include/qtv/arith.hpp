#pragma once

#include <mpfr.h>

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtv/memo.hpp"

namespace qtv {

using prec_t = mpfr_prec_t;

struct InvalidRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LogOfZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision real number (MPFR, round-to-nearest throughout).
/// Every value carries its own precision; binary operations produce a
/// result at the larger of the two operand precisions.
class Real {
public:
    explicit Real(prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long value, prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    Real(double value, prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, value, MPFR_RNDN);
    }
    /// Decimal string, e.g. "2.9230944207585713174".
    Real(const char* decimal, prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_str(v_, decimal, 10, MPFR_RNDN);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    prec_t prec() const { return mpfr_get_prec(v_); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Bit-exact equality (used by the determinism tests).
    bool identical(const Real& o) const {
        if (mpfr_nan_p(v_) || mpfr_nan_p(o.v_)) return false;
        return mpfr_cmp(v_, o.v_) == 0;
    }

    std::string str(int significant_digits) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    Real& operator+=(const Real& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend Real operator+(const Real& a, const Real& b) { return binop(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binop(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binop(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binop(mpfr_div, a, b); }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }

    static Real pi(prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    friend Real sin(const Real& a) { return unop(mpfr_sin, a); }
    friend Real cos(const Real& a) { return unop(mpfr_cos, a); }
    friend Real exp(const Real& a) { return unop(mpfr_exp, a); }
    friend Real log(const Real& a) { return unop(mpfr_log, a); }
    friend Real log10(const Real& a) { return unop(mpfr_log10, a); }
    friend Real sqrt(const Real& a) { return unop(mpfr_sqrt, a); }
    friend Real abs(const Real& a) { return unop(mpfr_abs, a); }
    friend Real atan2(const Real& y, const Real& x) { return binop(mpfr_atan2, y, x); }
    friend Real hypot(const Real& x, const Real& y) { return binop(mpfr_hypot, x, y); }

private:
    using mpfr_binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_unop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    static Real binop(mpfr_binop f, const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unop(mpfr_unop f, const Real& a) {
        Real r(a.prec());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

/// Complex number over Real. Exact signed zeros propagate through products,
/// so a value that is mathematically real keeps an exactly-zero imaginary
/// component.
class Complex {
public:
    explicit Complex(prec_t prec) : re_(prec), im_(prec) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit Complex(Real re) : re_(std::move(re)), im_(Real(prec_t(re_.prec()))) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }
    prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool identical(const Complex& o) const {
        return re_.identical(o.re_) && im_.identical(o.im_);
    }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend Complex operator*(const Complex& a, const Real& s) { return {a.re_ * s, a.im_ * s}; }
    friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
    }

    friend Real abs(const Complex& a) { return hypot(a.re_, a.im_); }

private:
    Real re_, im_;
};

/// sqrt with the convention sqrt(x) = sqrt(-x) * sqrt(-1) for x < 0.
Complex signed_sqrt(const Real& x);

/// log z with arg(z) in [0, 2*pi). Throws LogOfZero.
Complex principal_log(const Complex& z);

/// Number of agreeing leading decimal digits between two evaluations of the
/// same quantity, i.e. floor(-log10(|a-b| / max(1,|b|))), clamped to
/// [0, decimal capacity of the coarser precision].
int agreeing_decimal_digits(const Complex& a, const Complex& b);
int agreeing_decimal_digits(const Real& a, const Real& b);

/// Decimal digits representable at `prec` bits.
int decimal_capacity(prec_t prec);

struct SixKeyHash {
    std::size_t operator()(const std::array<std::uint16_t, 6>& k) const {
        std::size_t h = 1469598103934665603ull;
        for (auto t : k) {
            h ^= t;
            h *= 1099511628211ull;
        }
        return h;
    }
};
using SixKey = std::array<std::uint16_t, 6>;
using SixjCache = ConcurrentMemo<SixKey, std::shared_ptr<const Complex>, SixKeyHash>;

/// Validated root of unity q = e^{k*pi*i/r} with its precision context and
/// the per-root lookup tables: quantum integers [n], quantum factorials [n]!
/// for n = 0..2r, and the unit phases e^{i*pi*t/r} for t = 0..2r-1.
/// Immutable after construction except for the 6j memo cache, which supports
/// concurrent insert-or-read; a Root may be shared freely across threads.
class Root {
public:
    Root(int r, int k, prec_t prec);

    int r() const { return r_; }
    int k() const { return k_; }
    prec_t prec() const { return prec_; }

    /// [n] = sin(n*k*pi/r) / sin(k*pi/r), 0 <= n <= 2r.
    const Real& quantum_int(int n) const { return qint_.at(static_cast<std::size_t>(n)); }
    /// [n]! = [n][n-1]...[1], [0]! = 1, 0 <= n <= 2r.
    const Real& quantum_factorial(int n) const { return qfact_.at(static_cast<std::size_t>(n)); }

    /// e^{i*pi*t/r} for any integer t (reduced mod 2r).
    const Complex& unit_phase(long long t) const { return qpow_[phase_index(t)]; }
    /// q^m = e^{i*pi*m*k/r} for any integer m.
    const Complex& qpower(long long m) const { return unit_phase(m * k_); }

    const Real& pi() const { return pi_; }

    SixjCache& sixj_cache() const { return cache_; }

private:
    std::size_t phase_index(long long t) const {
        long long m = t % (2ll * r_);
        if (m < 0) m += 2ll * r_;
        return static_cast<std::size_t>(m);
    }

    int r_, k_;
    prec_t prec_;
    Real pi_;
    std::vector<Real> qint_, qfact_;
    std::vector<Complex> qpow_;
    mutable SixjCache cache_;
};

/// Validates r >= 3, 1 <= k < 2r, gcd(k, r) = 1 (so that q^2 is a primitive
/// root of unity of degree r). Throws InvalidRoot.
Root make_root(int r, int k, prec_t prec);

/// True iff (r, k) would pass make_root.
bool valid_root(int r, int k);

/// A computed invariant: value, working precision, and the number of leading
/// decimal digits that agreed between two successive precision levels.
struct InvariantValue {
    Real re;
    Real im;
    prec_t prec;
    int verified_digits;

    Complex value() const { return {re, im}; }
};

struct VerifyOptions {
    prec_t initial_bits = 256;
    int requested_digits = 12;
    prec_t max_bits = 1 << 14;
};

/// Adaptive-precision driver: evaluates `f` at p and 2p bits, counts agreeing
/// digits, and doubles p until the request is met or max_bits is exceeded.
/// `f` must be a pure function of the precision argument.
template <typename Eval>
InvariantValue eval_verified(Eval&& f, const VerifyOptions& opt = {}) {
    prec_t p = opt.initial_bits;
    Complex lo = f(p);
    for (;;) {
        prec_t hi_bits = 2 * p;
        if (hi_bits > opt.max_bits)
            throw PrecisionExhausted("requested verified digits unreachable at precision cap " +
                                     std::to_string(opt.max_bits) + " bits");
        Complex hi = f(hi_bits);
        int digits = agreeing_decimal_digits(lo, hi);
        if (digits >= opt.requested_digits)
            return InvariantValue{hi.re(), hi.im(), hi_bits, digits};
        p = hi_bits;
        lo = std::move(hi);
    }
}

}  // namespace qtv
