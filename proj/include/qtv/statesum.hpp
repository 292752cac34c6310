#pragma once

#include "qtv/arith.hpp"
#include "qtv/sixj.hpp"
#include "qtv/tri.hpp"

namespace qtv {

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TvOptions {
    int requested_digits = 12;
    prec_t max_bits = 1 << 14;
    /// 0 = all available threads. The floating-point result is independent
    /// of the thread count: colorings are partitioned on the first edge
    /// class's color, each partition is accumulated in lexicographic order
    /// with compensated summation, and partitions are reduced in index order.
    int threads = 1;
};

/// One state-sum evaluation of TV_r(M,T) at the root's fixed precision.
Complex tv_fixed(const ColoredTriangulation& ct, const Root& root, int threads = 1);

/// TV with the adaptive verification policy: evaluate at root.prec() and at
/// doubled precision, count agreeing digits, double until opt.requested_digits
/// is reached or opt.max_bits is exceeded (PrecisionExhausted).
InvariantValue tv(const ColoredTriangulation& ct, const Root& root, const TvOptions& opt = {});

/// Independence oracle: full Cartesian enumeration of I_r^E, no pruning, no
/// 6j cache or canonicalization, plain summation. Requires E <= 5 and r <= 9
/// (TooLarge otherwise).
InvariantValue tv_bruteforce(const ColoredTriangulation& ct, const Root& root,
                             const TvOptions& opt = {});
Complex tv_bruteforce_fixed(const ColoredTriangulation& ct, const Root& root);

struct TvQv {
    InvariantValue tv;
    InvariantValue qv;
};

/// QV_r(M) = (2 pi / (r-2)) log(TV_r(M; e^{2 pi i / r})), principal branch
/// with arg in [0, 2 pi). Odd r only; throws LogOfZero when TV vanishes.
/// Both quantities come from the same evaluations.
TvQv tv_and_qv(const ColoredTriangulation& ct, int r, prec_t initial_bits = 256,
               const TvOptions& opt = {});
InvariantValue qv(const ColoredTriangulation& ct, int r, prec_t initial_bits = 256,
                  const TvOptions& opt = {});

}  // namespace qtv
