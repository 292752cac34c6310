#include "qtv/sixj.hpp"

#include <algorithm>
#include <vector>

namespace qtv {

namespace {

// Multiply by sqrt(-1)^m exactly (component swap and negation only).
Complex mul_ipow(const Complex& z, int m) {
    m &= 3;
    if (m < 0) m += 4;
    switch (m) {
        case 0: return z;
        case 1: return {-z.im(), z.re()};
        case 2: return {-z.re(), -z.im()};
        default: return {z.im(), -z.re()};
    }
}

void require_triple(Color i, Color j, Color k, int r) {
    if (!is_admissible_triple(i, j, k, r))
        throw InadmissibleTriple("triple (" + std::to_string(i) + "/2, " + std::to_string(j) +
                                 "/2, " + std::to_string(k) + "/2) not admissible at r=" +
                                 std::to_string(r));
}

// The formula of the 6j-symbol evaluated verbatim on t. Every factorial
// argument below is in color units (an integer for admissible input).
Complex evaluate(const SixTuple& t, const Root& root) {
    const int r = root.r();
    if (!is_admissible_tuple(t, r))
        throw InadmissibleSixTuple("6-tuple not admissible at r=" + std::to_string(r));

    const int T1 = (t[0] + t[1] + t[2]) / 2;
    const int T2 = (t[1] + t[3] + t[5]) / 2;
    const int T3 = (t[0] + t[4] + t[5]) / 2;
    const int T4 = (t[2] + t[3] + t[4]) / 2;
    const int Q1 = (t[0] + t[1] + t[3] + t[4]) / 2;
    const int Q2 = (t[0] + t[2] + t[3] + t[5]) / 2;
    const int Q3 = (t[1] + t[2] + t[4] + t[5]) / 2;

    Complex pref = delta(t[0], t[1], t[2], root) * delta(t[1], t[3], t[5], root) *
                   delta(t[0], t[4], t[5], root) * delta(t[2], t[3], t[4], root);
    pref = mul_ipow(pref, -(t[0] + t[1] + t[2] + t[3] + t[4] + t[5]));

    const int z_lo = std::max({T1, T2, T3, T4});
    // Terms with z+1 >= r vanish: [z+1]! contains the factor [r] = 0.
    const int z_hi = std::min({Q1, Q2, Q3, r - 2});

    Real sum(root.prec());
    for (int z = z_lo; z <= z_hi; ++z) {
        Real denom = root.quantum_factorial(z - T1) * root.quantum_factorial(z - T2);
        denom *= root.quantum_factorial(z - T3);
        denom *= root.quantum_factorial(z - T4);
        denom *= root.quantum_factorial(Q1 - z);
        denom *= root.quantum_factorial(Q2 - z);
        denom *= root.quantum_factorial(Q3 - z);
        Real term = root.quantum_factorial(z + 1) / denom;
        if (z & 1)
            sum -= term;
        else
            sum += term;
    }
    return pref * sum;
}

}  // namespace

Real weight(Color i, const Root& root) {
    Real w = root.quantum_int(i + 1);
    return (i & 1) ? -w : w;
}

Complex delta(Color i, Color j, Color k, const Root& root) {
    require_triple(i, j, k, root.r());
    Real num = root.quantum_factorial((i + j - k) / 2) *
               root.quantum_factorial((j + k - i) / 2) * root.quantum_factorial((k + i - j) / 2);
    return signed_sqrt(num / root.quantum_factorial((i + j + k) / 2 + 1));
}

SixTuple apply_symmetry(const SixTuple& t, int which) {
    switch (which) {
        case 0: return t;
        case 1: return {t[1], t[0], t[2], t[4], t[3], t[5]};
        case 2: return {t[0], t[2], t[1], t[3], t[5], t[4]};
        case 3: return {t[0], t[4], t[5], t[3], t[1], t[2]};
        case 4: return {t[3], t[4], t[2], t[0], t[1], t[5]};
        default: return {t[3], t[1], t[5], t[0], t[4], t[2]};
    }
}

namespace {

// Closure of the five printed non-identity symmetries under composition,
// as position permutations (24 elements; computed once).
const std::vector<std::array<int, 6>>& symmetry_group() {
    static const std::vector<std::array<int, 6>> group = [] {
        std::vector<std::array<int, 6>> g{{0, 1, 2, 3, 4, 5}};
        const std::array<int, 6> gens[5] = {
            {1, 0, 2, 4, 3, 5}, {0, 2, 1, 3, 5, 4}, {0, 4, 5, 3, 1, 2},
            {3, 4, 2, 0, 1, 5}, {3, 1, 5, 0, 4, 2}};
        for (std::size_t at = 0; at < g.size(); ++at) {
            for (const auto& s : gens) {
                std::array<int, 6> comp;
                for (int p = 0; p < 6; ++p) comp[static_cast<std::size_t>(p)] = g[at][static_cast<std::size_t>(s[static_cast<std::size_t>(p)])];
                if (std::find(g.begin(), g.end(), comp) == g.end()) g.push_back(comp);
            }
        }
        return g;
    }();
    return group;
}

}  // namespace

SixTuple canonical_key(const SixTuple& t) {
    SixTuple best = t;
    for (const auto& perm : symmetry_group()) {
        SixTuple cand;
        for (int p = 0; p < 6; ++p) cand[static_cast<std::size_t>(p)] = t[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])];
        if (cand < best) best = cand;
    }
    return best;
}

Complex sixj_uncached(const SixTuple& t, const Root& root) {
    return evaluate(canonical_key(t), root);
}

Complex sixj_direct(const SixTuple& t, const Root& root) { return evaluate(t, root); }

Complex sixj(const SixTuple& t, const Root& root) {
    const int r = root.r();
    if (!is_admissible_tuple(t, r))
        throw InadmissibleSixTuple("6-tuple not admissible at r=" + std::to_string(r));
    SixTuple key = canonical_key(t);
    SixKey packed;
    for (int p = 0; p < 6; ++p) packed[static_cast<std::size_t>(p)] = static_cast<std::uint16_t>(key[static_cast<std::size_t>(p)]);
    std::shared_ptr<const Complex> hit;
    if (root.sixj_cache().lookup(packed, hit)) return *hit;
    auto value = std::make_shared<const Complex>(evaluate(key, root));
    root.sixj_cache().store(packed, value);
    return *value;
}

Real check_orthogonality(Color i, Color j, Color k, Color l, Color m, Color n, const Root& root) {
    const int r = root.r();
    for (auto [a, b, c] : {std::array{i, j, m}, std::array{i, j, n}, std::array{k, l, m},
                           std::array{k, l, n}}) {
        if (!is_admissible_triple(a, b, c, r))
            throw InadmissibleInput("orthogonality input triple not admissible");
    }
    Complex sum(root.prec());
    Real wm = weight(m, root);
    for (Color s = 0; s <= r - 2; ++s) {
        if (!is_admissible_triple(j, k, s, r) || !is_admissible_triple(i, l, s, r)) continue;
        Complex term = sixj({i, j, m, k, l, s}, root) * sixj({i, j, n, k, l, s}, root);
        sum = sum + term * (weight(s, root) * wm);
    }
    if (m == n) sum = sum - Complex(Real(1L, root.prec()));
    return abs(sum);
}

Real check_biedenharn_elliot(Color i, Color j, Color k, Color l, Color m, Color n, Color o, Color p,
                             Color q, const Root& root) {
    const int r = root.r();
    if (!is_admissible_tuple({o, p, q, i, j, k}, r) || !is_admissible_tuple({o, p, q, l, m, n}, r))
        throw InadmissibleInput("BE input 6-tuples not admissible");
    Complex sum(root.prec());
    for (Color s = 0; s <= r - 2; ++s) {
        if (!is_admissible_triple(j, m, s, r) || !is_admissible_triple(i, l, s, r) ||
            !is_admissible_triple(k, n, s, r))
            continue;
        Complex term = sixj({i, j, q, m, l, s}, root) * sixj({j, k, o, n, m, s}, root) *
                       sixj({k, i, p, l, n, s}, root);
        sum = sum + term * weight(s, root);
    }
    Complex rhs = sixj({o, p, q, i, j, k}, root) * sixj({o, p, q, l, m, n}, root);
    return abs(sum - rhs);
}

void for_each_orthogonality_input(int r,
                                  const std::function<void(const std::array<Color, 6>&)>& fn) {
    const int c_max = r - 2;
    for (Color i = 0; i <= c_max; ++i)
        for (Color j = 0; j <= c_max; ++j)
            for (Color m = 0; m <= c_max; ++m) {
                if (!is_admissible_triple(i, j, m, r)) continue;
                for (Color k = 0; k <= c_max; ++k)
                    for (Color l = 0; l <= c_max; ++l) {
                        if (!is_admissible_triple(k, l, m, r)) continue;
                        for (Color n = 0; n <= c_max; ++n) {
                            if (!is_admissible_triple(i, j, n, r) ||
                                !is_admissible_triple(k, l, n, r))
                                continue;
                            fn({i, j, k, l, m, n});
                        }
                    }
            }
}

void for_each_admissible_tuple(int r, const std::function<void(const SixTuple&)>& fn) {
    const int c_max = r - 2;
    for (Color i = 0; i <= c_max; ++i)
        for (Color j = 0; j <= c_max; ++j)
            for (Color k = 0; k <= c_max; ++k) {
                if (!is_admissible_triple(i, j, k, r)) continue;
                for (Color l = 0; l <= c_max; ++l)
                    for (Color m = 0; m <= c_max; ++m) {
                        if (!is_admissible_triple(k, l, m, r)) continue;
                        for (Color n = 0; n <= c_max; ++n) {
                            if (!is_admissible_triple(j, l, n, r) ||
                                !is_admissible_triple(i, m, n, r))
                                continue;
                            fn({i, j, k, l, m, n});
                        }
                    }
            }
}

void for_each_be_input(int r, const std::function<void(const std::array<Color, 9>&)>& fn) {
    // Group admissible 6-tuples by their first triple (o,p,q); a BE input is
    // a pair of completions of the same (o,p,q).
    const int c_max = r - 2;
    for (Color o = 0; o <= c_max; ++o)
        for (Color p = 0; p <= c_max; ++p)
            for (Color q = 0; q <= c_max; ++q) {
                if (!is_admissible_triple(o, p, q, r)) continue;
                std::vector<std::array<Color, 3>> completions;
                for (Color i = 0; i <= c_max; ++i)
                    for (Color j = 0; j <= c_max; ++j)
                        for (Color k = 0; k <= c_max; ++k)
                            if (is_admissible_tuple({o, p, q, i, j, k}, r))
                                completions.push_back({i, j, k});
                for (const auto& a : completions)
                    for (const auto& b : completions)
                        fn({a[0], a[1], a[2], b[0], b[1], b[2], o, p, q});
            }
}

std::array<Color, 6> sample_orthogonality_input(std::mt19937_64& rng, int r) {
    std::uniform_int_distribution<Color> pick(0, r - 2);
    for (;;) {
        Color i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng), m = pick(rng),
              n = pick(rng);
        if (is_admissible_triple(i, j, m, r) && is_admissible_triple(i, j, n, r) &&
            is_admissible_triple(k, l, m, r) && is_admissible_triple(k, l, n, r))
            return {i, j, k, l, m, n};
    }
}

std::array<Color, 9> sample_be_input(std::mt19937_64& rng, int r) {
    std::uniform_int_distribution<Color> pick(0, r - 2);
    for (;;) {
        std::array<Color, 9> c;
        for (auto& x : c) x = pick(rng);
        if (is_admissible_tuple({c[6], c[7], c[8], c[0], c[1], c[2]}, r) &&
            is_admissible_tuple({c[6], c[7], c[8], c[3], c[4], c[5]}, r))
            return c;
    }
}

}  // namespace qtv
