#include "qtv/statesum.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <set>

namespace qtv {

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

// Static enumeration plan: variable order, plus the face checks and tet
// symbols that become computable at each depth.
struct Plan {
    int num_classes;
    std::vector<int> order;                          // depth -> class
    std::vector<std::array<int, 3>> faces;           // unique face triples (class ids)
    std::vector<std::vector<int>> faces_at;          // depth -> face indices completing there
    std::vector<std::vector<const Tet*>> tets_at;    // depth -> tets completing there
};

Plan make_plan(const ColoredTriangulation& ct) {
    Plan plan;
    plan.num_classes = ct.num_edge_classes;
    const std::size_t E = static_cast<std::size_t>(ct.num_edge_classes);

    // Most-constrained class first: descending slot count, ties by index.
    std::vector<int> occ(E, 0);
    for (const auto& t : ct.tets)
        for (int slot : t) ++occ[static_cast<std::size_t>(slot)];
    plan.order.resize(E);
    std::iota(plan.order.begin(), plan.order.end(), 0);
    std::stable_sort(plan.order.begin(), plan.order.end(), [&occ](int a, int b) {
        return occ[static_cast<std::size_t>(a)] > occ[static_cast<std::size_t>(b)];
    });
    std::vector<int> pos_of(E);
    for (std::size_t d = 0; d < E; ++d) pos_of[static_cast<std::size_t>(plan.order[d])] = static_cast<int>(d);

    // The four faces of a tet in slot terms: (0,1,2), (1,3,5), (0,4,5), (2,3,4).
    static constexpr int kFaceSlots[4][3] = {{0, 1, 2}, {1, 3, 5}, {0, 4, 5}, {2, 3, 4}};
    std::set<std::array<int, 3>> unique_faces;
    for (const auto& t : ct.tets)
        for (const auto& f : kFaceSlots) {
            std::array<int, 3> tri{t[static_cast<std::size_t>(f[0])], t[static_cast<std::size_t>(f[1])], t[static_cast<std::size_t>(f[2])]};
            std::sort(tri.begin(), tri.end());
            unique_faces.insert(tri);
        }
    plan.faces.assign(unique_faces.begin(), unique_faces.end());
    plan.faces_at.resize(E);
    for (std::size_t fi = 0; fi < plan.faces.size(); ++fi) {
        const auto& f = plan.faces[fi];
        int done = std::max({pos_of[static_cast<std::size_t>(f[0])], pos_of[static_cast<std::size_t>(f[1])], pos_of[static_cast<std::size_t>(f[2])]});
        plan.faces_at[static_cast<std::size_t>(done)].push_back(static_cast<int>(fi));
    }
    plan.tets_at.resize(E);
    for (const auto& t : ct.tets) {
        int done = 0;
        for (int slot : t) done = std::max(done, pos_of[static_cast<std::size_t>(slot)]);
        plan.tets_at[static_cast<std::size_t>(done)].push_back(&t);
    }
    return plan;
}

// Accumulates, in lexicographic color order, every admissible completion of
// the partition that fixes the first-ordered class to `first_color`.
Complex partition_sum(const Plan& plan, const Root& root, Color first_color) {
    const int r = root.r();
    const std::size_t E = static_cast<std::size_t>(plan.num_classes);
    std::vector<Color> colors(E, 0);
    std::vector<Complex> partial;
    partial.reserve(E + 1);
    for (std::size_t d = 0; d <= E; ++d) partial.emplace_back(root.prec());
    partial[0] = Complex(Real(1L, root.prec()));

    Kahan acc(root.prec());

    // Checks faces/tets completing at depth d; multiplies the new weight and
    // any completed tet symbols into partial[d+1]. Returns false to prune.
    auto extend = [&](std::size_t d, Color c) -> bool {
        colors[static_cast<std::size_t>(plan.order[d])] = c;
        for (int fi : plan.faces_at[d]) {
            const auto& f = plan.faces[static_cast<std::size_t>(fi)];
            if (!is_admissible_triple(colors[static_cast<std::size_t>(f[0])], colors[static_cast<std::size_t>(f[1])],
                                      colors[static_cast<std::size_t>(f[2])], r))
                return false;
        }
        Complex acc_d = partial[d] * weight(c, root);
        for (const Tet* t : plan.tets_at[d]) {
            SixTuple st;
            for (std::size_t s = 0; s < 6; ++s) st[s] = colors[static_cast<std::size_t>((*t)[s])];
            acc_d = acc_d * sixj(st, root);
        }
        partial[d + 1] = std::move(acc_d);
        return true;
    };

    auto descend = [&](auto&& self, std::size_t d) -> void {
        if (d == E) {
            acc.add(partial[E]);
            return;
        }
        for (Color c = 0; c <= r - 2; ++c)
            if (extend(d, c)) self(self, d + 1);
    };

    if (extend(0, first_color)) {
        if (E == 1)
            acc.add(partial[1]);
        else
            descend(descend, 1);
    }
    return acc.sum;
}

}  // namespace

Complex tv_fixed(const ColoredTriangulation& ct, const Root& root, int threads) {
    if (ct.tets.empty()) throw EmptyTriangulation("state sum over empty triangulation");
    Plan plan = make_plan(ct);
    const int r = root.r();
    const int parts = r - 1;  // first class's color 0..r-2

    std::vector<Complex> part_sums;
    part_sums.reserve(static_cast<std::size_t>(parts));
    for (int i = 0; i < parts; ++i) part_sums.emplace_back(root.prec());

    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int c0 = 0; c0 < parts; ++c0)
        part_sums[static_cast<std::size_t>(c0)] = partition_sum(plan, root, c0);

    // Partition-index-order reduction: the result is a function of the
    // partition sums only, so it cannot depend on the thread count.
    Kahan total(root.prec());
    for (const auto& s : part_sums) total.add(s);
    return total.sum;
}

InvariantValue tv(const ColoredTriangulation& ct, const Root& root, const TvOptions& opt) {
    VerifyOptions vo{root.prec(), opt.requested_digits, opt.max_bits};
    return eval_verified(
        [&](prec_t p) {
            if (p == root.prec()) return tv_fixed(ct, root, opt.threads);
            Root hi = make_root(root.r(), root.k(), p);
            return tv_fixed(ct, hi, opt.threads);
        },
        vo);
}

Complex tv_bruteforce_fixed(const ColoredTriangulation& ct, const Root& root) {
    const int r = root.r();
    const std::size_t E = static_cast<std::size_t>(ct.num_edge_classes);
    if (E > 5 || r > 9)
        throw TooLarge("brute-force oracle limited to E <= 5 and r <= 9");
    if (ct.tets.empty()) throw EmptyTriangulation("state sum over empty triangulation");

    std::vector<Color> colors(E, 0);
    Complex total(root.prec());
    for (;;) {
        bool admissible = true;
        for (const auto& t : ct.tets) {
            SixTuple st;
            for (std::size_t s = 0; s < 6; ++s) st[s] = colors[static_cast<std::size_t>(t[s])];
            if (!is_admissible_tuple(st, r)) {
                admissible = false;
                break;
            }
        }
        if (admissible) {
            Complex term(Real(1L, root.prec()));
            for (std::size_t e = 0; e < E; ++e) term = term * weight(colors[e], root);
            for (const auto& t : ct.tets) {
                SixTuple st;
                for (std::size_t s = 0; s < 6; ++s) st[s] = colors[static_cast<std::size_t>(t[s])];
                term = term * sixj_direct(st, root);
            }
            total = total + term;
        }
        // odometer, last class fastest: lexicographic order overall
        std::size_t e = E;
        while (e > 0) {
            --e;
            if (++colors[e] <= r - 2) break;
            colors[e] = 0;
            if (e == 0) return total;
        }
    }
}

InvariantValue tv_bruteforce(const ColoredTriangulation& ct, const Root& root,
                             const TvOptions& opt) {
    VerifyOptions vo{root.prec(), opt.requested_digits, opt.max_bits};
    return eval_verified(
        [&](prec_t p) {
            if (p == root.prec()) return tv_bruteforce_fixed(ct, root);
            Root hi = make_root(root.r(), root.k(), p);
            return tv_bruteforce_fixed(ct, hi);
        },
        vo);
}

namespace {

Complex qv_from_tv(const Complex& tv_value, int r) {
    if (tv_value.is_zero()) throw LogOfZero("TV = 0: QV undefined");
    prec_t p = tv_value.prec();
    Real two_pi = Real::pi(p) + Real::pi(p);
    Real scale = two_pi / Real(static_cast<long>(r - 2), p);
    return principal_log(tv_value) * scale;
}

}  // namespace

TvQv tv_and_qv(const ColoredTriangulation& ct, int r, prec_t initial_bits, const TvOptions& opt) {
    if (r % 2 == 0) throw InvalidRoot("QV_r is defined for odd r only, got r=" + std::to_string(r));
    prec_t p = initial_bits;
    Root lo_root = make_root(r, 2, p);
    Complex tv_lo = tv_fixed(ct, lo_root, opt.threads);
    Complex qv_lo = qv_from_tv(tv_lo, r);
    for (;;) {
        prec_t hi_bits = 2 * p;
        if (hi_bits > opt.max_bits)
            throw PrecisionExhausted("requested verified digits unreachable at precision cap " +
                                     std::to_string(opt.max_bits) + " bits");
        Root hi_root = make_root(r, 2, hi_bits);
        Complex tv_hi = tv_fixed(ct, hi_root, opt.threads);
        Complex qv_hi = qv_from_tv(tv_hi, r);
        int tv_digits = agreeing_decimal_digits(tv_lo, tv_hi);
        int qv_digits = agreeing_decimal_digits(qv_lo, qv_hi);
        if (std::min(tv_digits, qv_digits) >= opt.requested_digits) {
            return TvQv{InvariantValue{tv_hi.re(), tv_hi.im(), hi_bits, tv_digits},
                        InvariantValue{qv_hi.re(), qv_hi.im(), hi_bits, qv_digits}};
        }
        p = hi_bits;
        tv_lo = std::move(tv_hi);
        qv_lo = std::move(qv_hi);
    }
}

InvariantValue qv(const ColoredTriangulation& ct, int r, prec_t initial_bits,
                  const TvOptions& opt) {
    return tv_and_qv(ct, r, initial_bits, opt).qv;
}

}  // namespace qtv
