#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtv/arith.hpp"

using namespace qtv;

namespace {
double d(const Real& x) { return x.to_double(); }
}  // namespace

TEST_CASE("make_root validates level, index and primitivity") {
    CHECK_NOTHROW(make_root(5, 2, 128));   // filled cell in the k=2 row
    CHECK_THROWS_AS(make_root(4, 2, 128), InvalidRoot);  // blank cell: gcd(2,4)=2
    CHECK_NOTHROW(make_root(3, 1, 128));
    CHECK_THROWS_AS(make_root(2, 1, 128), InvalidRoot);
    CHECK_THROWS_AS(make_root(5, 0, 128), InvalidRoot);
    CHECK_THROWS_AS(make_root(5, 10, 128), InvalidRoot);  // k = 2r
    CHECK_THROWS_AS(make_root(9, 3, 128), InvalidRoot);
    CHECK_NOTHROW(make_root(9, 4, 128));
    CHECK(valid_root(7, 13));
    CHECK_FALSE(valid_root(6, 2));
}

TEST_CASE("quantum integers") {
    Root root = make_root(5, 2, 256);
    CHECK(d(root.quantum_int(1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(root.quantum_int(0).is_zero());
    // [2] at (r=5,k=2) = 2 cos(2 pi/5) = 0.618034...
    CHECK(d(root.quantum_int(2)) == doctest::Approx(2 * std::cos(2 * M_PI / 5)).epsilon(1e-12));
}

TEST_CASE("quantum integer reflection identities") {
    // k=1: [r-n] = [n]; k=2 (odd r): [r-n] = -[n]
    Root r1 = make_root(11, 1, 256);
    Root r2 = make_root(11, 2, 256);
    for (int n = 1; n <= 10; ++n) {
        CHECK(d(abs(r1.quantum_int(11 - n) - r1.quantum_int(n))) < 1e-70);
        CHECK(d(abs(r2.quantum_int(11 - n) + r2.quantum_int(n))) < 1e-70);
    }
}

TEST_CASE("quantum factorial table is the running product") {
    Root root = make_root(7, 1, 256);
    CHECK(d(root.quantum_factorial(0)) == 1.0);
    CHECK(d(root.quantum_factorial(1)) == doctest::Approx(1.0).epsilon(1e-15));
    for (int n = 1; n <= 14; ++n) {
        Real expect = root.quantum_factorial(n - 1) * root.quantum_int(n);
        CHECK(root.quantum_factorial(n).identical(expect));
    }
    // [3]! at (r=7,k=1) against a naive product of quantum integers
    Real naive = root.quantum_int(1) * root.quantum_int(2) * root.quantum_int(3);
    CHECK(d(abs(root.quantum_factorial(3) - naive)) < 1e-70);
}

TEST_CASE("signed sqrt convention") {
    prec_t p = 256;
    Complex a = signed_sqrt(Real(4.0, p));
    CHECK(d(a.re()) == 2.0);
    CHECK(a.im().is_zero());
    Complex b = signed_sqrt(Real(-4.0, p));
    CHECK(b.re().is_zero());
    CHECK(d(b.im()) == 2.0);  // positive imaginary part
    Complex c = signed_sqrt(Real(p));
    CHECK(c.re().is_zero());
    CHECK(c.im().is_zero());
}

TEST_CASE("signed sqrt squares back for both signs") {
    prec_t p = 256;
    for (double x : {3.25, 0.5, -0.5, -7.75, 123.0, -123.0}) {
        Complex s = signed_sqrt(Real(x, p));
        Complex sq = s * s;
        CHECK(d(abs(sq - Complex(Real(x, p)))) < 1e-70);
    }
}

TEST_CASE("principal log keeps the argument in [0, 2pi)") {
    prec_t p = 256;
    CHECK(d(abs(principal_log(Complex(Real(1L, p))))) < 1e-70);
    Complex neg1(Real(-1L, p));
    Complex l = principal_log(neg1);
    CHECK(d(l.re()) == doctest::Approx(0.0).epsilon(1e-70));
    CHECK(d(l.im()) == doctest::Approx(M_PI).epsilon(1e-15));
    Complex e2(exp(Real(2L, p)));
    CHECK(d(principal_log(e2).re()) == doctest::Approx(2.0).epsilon(1e-15));
    // below the real axis: arg in (pi, 2pi)
    Complex z(Real(1L, p), Real(-1L, p));
    CHECK(d(principal_log(z).im()) == doctest::Approx(2 * M_PI - M_PI / 4).epsilon(1e-15));
    CHECK_THROWS_AS(principal_log(Complex(p)), LogOfZero);
}

TEST_CASE("agreeing digits and the verification driver") {
    prec_t p = 256;
    Complex a(Real(1.0, p));
    Complex b(Real(1.0 + 1e-9, p));
    int digits = agreeing_decimal_digits(a, b);
    CHECK(digits >= 8);
    CHECK(digits <= 10);

    // doubling the precision changes a well-conditioned result below the
    // verified-digit threshold
    auto eval = [](prec_t bits) {
        Root root = make_root(7, 1, bits);
        return Complex(root.quantum_int(3) / root.quantum_int(2));
    };
    InvariantValue v = eval_verified(eval, {256, 12, 1 << 14});
    CHECK(v.verified_digits >= 12);
    CHECK(v.prec == 512);
    Complex again = eval(1024);
    CHECK(d(abs(again - v.value())) < 1e-70);

    CHECK_THROWS_AS(
        eval_verified([](prec_t bits) { return Complex(Real(1.0, bits)); }, {256, 1 << 30, 512}),
        PrecisionExhausted);
}

TEST_CASE("unit phases and q powers reduce exponents mod 2r") {
    Root root = make_root(7, 2, 256);
    // q^m = e^{2 pi i m/7}: period 7 in m
    for (long long m : {-13LL, -1LL, 0LL, 3LL, 6LL, 20LL}) {
        Complex a = root.qpower(m);
        Complex b = root.qpower(m + 7);
        CHECK(d(abs(a - b)) < 1e-70);
    }
    Complex q1 = root.qpower(1);
    CHECK(d(q1.re()) == doctest::Approx(std::cos(2 * M_PI / 7)).epsilon(1e-14));
    CHECK(d(q1.im()) == doctest::Approx(std::sin(2 * M_PI / 7)).epsilon(1e-14));
}

TEST_CASE("real formatting") {
    prec_t p = 128;
    CHECK(Real(2.4066065, p).str(6) == "2.40661");
    CHECK(Real(p).str(6) == "0");
    CHECK(Real(-1.5, p).str(3) == "-1.5");
    CHECK(Real(0.25, p).str(2) == "0.25");
    CHECK(Real(1e-9, p).str(3) == "1e-9");
}
