#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtv/jones.hpp"

using namespace qtv;

namespace {

double d(const Real& x) { return x.to_double(); }

// Term-by-term oracle for the fig8 sum: every product built from scratch.
Complex fig8_oracle(int n, const Root& root) {
    Complex sum(root.prec());
    for (int k = 0; k <= n - 1; ++k) {
        Complex prod(Real(1L, root.prec()));
        for (int i = 1; i <= k; ++i) {
            Complex f1 = root.qpower(n - i) - root.qpower(-(n - i));
            Complex f2 = root.qpower(n + i) - root.qpower(-(n + i));
            prod = prod * f1 * f2;
        }
        sum = sum + prod;
    }
    return sum;
}

// Same for the 5_2 double sum, with the c_k inner sum expanded in place.
Complex k52_oracle(int n, const Root& root) {
    prec_t p = root.prec();
    Complex sum(p);
    for (int k = 0; k <= n - 1; ++k) {
        Complex ck(p);
        for (int i = 0; i <= k; ++i) {
            Real binom = root.quantum_factorial(k) /
                         (root.quantum_factorial(i) * root.quantum_factorial(k - i));
            ck = ck + root.qpower(1ll * i * i - 2ll * i - 3ll * k * i) * binom;
        }
        ck = ck * root.qpower(1ll * k * (5ll * k + 7) / 2);
        if (k & 1) ck = -ck;
        Complex prod(Real(1L, p));
        for (int i = 1; i <= k; ++i) {
            Complex f1 = root.qpower(n - i) - root.qpower(-(n - i));
            Complex f2 = root.qpower(n + i) - root.qpower(-(n + i));
            prod = prod * f1 * f2;
        }
        sum = sum + root.qpower(1ll * k * (k + 3) / 2) * ck * prod;
    }
    return sum;
}

}  // namespace

TEST_CASE("J_1 = 1 at every root (unknot normalization)") {
    for (auto [r, k] : std::vector<std::pair<int, int>>{{5, 1}, {5, 2}, {7, 2}, {9, 2}, {11, 1}}) {
        Root root = make_root(r, k, 256);
        CHECK(d(abs(jones_fig8(1, root) - Complex(Real(1L, 256)))) < 1e-70);
        CHECK(d(abs(jones_52(1, root) - Complex(Real(1L, 256)))) < 1e-70);
    }
}

TEST_CASE("c_0 = 1") {
    Root root = make_root(7, 2, 256);
    CHECK(d(abs(jones_52_coefficient(0, root) - Complex(Real(1L, 256)))) < 1e-70);
}

TEST_CASE("fig8 J_2 = 1 + (q - q^-1)(q^3 - q^-3)") {
    Root root = make_root(9, 2, 256);
    Complex expect = Complex(Real(1L, 256)) +
                     (root.qpower(1) - root.qpower(-1)) * (root.qpower(3) - root.qpower(-3));
    CHECK(d(abs(jones_fig8(2, root) - expect)) < 1e-70);
}

TEST_CASE("incremental evaluation equals the term-by-term oracle") {
    for (int r : {11, 31}) {
        Root root = make_root(r, 2, 256);
        for (int n = 1; n <= r - 1; ++n) {
            CHECK(d(abs(jones_fig8(n, root) - fig8_oracle(n, root))) < 1e-55);
            CHECK(d(abs(jones_52(n, root) - k52_oracle(n, root))) < 1e-50);
        }
    }
    // n = 2 at the spec's spot check root
    Root r52 = make_root(5, 2, 256);
    CHECK(d(abs(jones_52(2, r52) - k52_oracle(2, r52))) < 1e-60);
}

TEST_CASE("jones_all matches the per-n evaluations bitwise") {
    Root root = make_root(21, 2, 256);
    auto Jf = jones_all(Knot::fig8, root);
    auto Jk = jones_all(Knot::k52, root);
    REQUIRE(Jf.size() == 20);
    REQUIRE(Jk.size() == 20);
    for (int n = 1; n <= 20; ++n) {
        CHECK(Jf[static_cast<std::size_t>(n - 1)].identical(jones_fig8(n, root)));
        CHECK(Jk[static_cast<std::size_t>(n - 1)].identical(jones_52(n, root)));
    }
}

TEST_CASE("rt_surgery input validation") {
    CHECK_THROWS_AS(rt_surgery_fixed({Knot::fig8, 0, 51}, 128), std::invalid_argument);
    CHECK_THROWS_AS(rt_surgery_fixed({Knot::fig8, 5, 50}, 128), InvalidRoot);
    CHECK_THROWS_AS(qr(Knot::fig8, 5, 5, {}), InvalidRoot);
    CHECK_THROWS_AS(qr(Knot::k52, 0, 51, {}), std::invalid_argument);
}

TEST_CASE("rt_surgery n-loop parallelism is deterministic") {
    Complex a = rt_surgery_fixed({Knot::fig8, -6, 31}, 256, 1);
    Complex b = rt_surgery_fixed({Knot::fig8, -6, 31}, 256, 8);
    CHECK(a.identical(b));
}

TEST_CASE("Q_r table spot checks") {
    QrOptions opt;
    opt.target_im = -1.34092;
    QrResult q = qr(Knot::fig8, -6, 51, opt);
    CHECK(d(q.value.re()) == doctest::Approx(1.22717).epsilon(2e-5));
    CHECK(d(q.value.im()) == doctest::Approx(-1.34241).epsilon(2e-5));
    CHECK(q.verified_digits >= 12);

    QrOptions opt5;
    opt5.target_im = 1.52067;
    QrResult q5 = qr(Knot::fig8, 5, 51, opt5);
    CHECK(d(q5.value.re()) == doctest::Approx(0.87410).epsilon(2e-5));
    CHECK(d(q5.value.im()) == doctest::Approx(1.40967).epsilon(2e-5));

    QrOptions opt52;
    opt52.target_im = -4.45132;
    QrResult qk = qr(Knot::k52, -3, 51, opt52);
    CHECK(d(qk.value.re()) == doctest::Approx(2.10038).epsilon(2e-5));
    CHECK(d(qk.value.im()) == doctest::Approx(-4.37951).epsilon(2e-5));
}

TEST_CASE("the raw imaginary part and the reduced one differ by a multiple of pi^2") {
    QrOptions opt;
    opt.target_im = -1.34092;
    QrResult q = qr(Knot::fig8, -6, 51, opt);
    double diff = d(q.im_raw) - d(q.value.im());
    double ratio = diff / (M_PI * M_PI);
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
}

TEST_CASE("qr approaches the geometric target as r grows") {
    auto [vol, cs] = *surgery_target(Knot::fig8, 8);
    double prev = 1e9;
    for (int r : {51, 101, 151}) {
        QrOptions opt;
        opt.target_im = cs;
        QrResult q = qr(Knot::fig8, 8, r, opt);
        double dist = std::hypot(d(q.value.re()) - vol, d(q.value.im()) - cs);
        CHECK(dist < prev);
        prev = dist;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("surgery target table") {
    CHECK(surgery_target(Knot::fig8, -6).has_value());
    CHECK(surgery_target(Knot::k52, 7).has_value());
    CHECK_FALSE(surgery_target(Knot::fig8, 3).has_value());
    CHECK(knot_from_name("fig8") == Knot::fig8);
    CHECK(knot_from_name("5_2") == Knot::k52);
    CHECK_FALSE(knot_from_name("granny").has_value());
}
