#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>

#include "qtv/arith.hpp"

namespace qtv {

struct InadmissibleTriple : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InadmissibleSixTuple : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InadmissibleInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Colors are stored as twice-colors: the integer 2c for c in
/// I_r = {0, 1/2, ..., (r-2)/2}, i.e. 0..r-2. All index arithmetic is exact.
using Color = int;

/// (i, j, k, l, m, n) in the positional convention where the four faces are
/// (i,j,k), (j,l,n), (i,m,n), (k,l,m) and opposite edge pairs are the columns
/// (i,l), (j,m), (k,n).
using SixTuple = std::array<Color, 6>;

/// Triangle inequalities, integer total, and total <= r-2 (in color units;
/// twice-color total <= 2(r-2) and even).
inline bool is_admissible_triple(Color i, Color j, Color k, int r) {
    if (((i + j + k) & 1) != 0) return false;
    if (i + j < k || j + k < i || k + i < j) return false;
    return i + j + k <= 2 * (r - 2);
}

inline bool is_admissible_tuple(const SixTuple& t, int r) {
    return is_admissible_triple(t[0], t[1], t[2], r) && is_admissible_triple(t[1], t[3], t[5], r) &&
           is_admissible_triple(t[0], t[4], t[5], r) && is_admissible_triple(t[2], t[3], t[4], r);
}

/// w_i = (-1)^{2i} [2i+1].
Real weight(Color i, const Root& root);

/// Delta(i,j,k) = signed_sqrt([i+j-k]! [j+k-i]! [k+i-j]! / [i+j+k+1]!).
/// Purely real or purely imaginary. Throws InadmissibleTriple.
Complex delta(Color i, Color j, Color k, const Root& root);

/// Lexicographically least member of the orbit of `t` under the six printed
/// 6j-symbol symmetries (closed under composition).
SixTuple canonical_key(const SixTuple& t);

/// Quantum 6j-symbol, canonicalized and memoized per Root.
/// Throws InadmissibleSixTuple.
Complex sixj(const SixTuple& t, const Root& root);

/// Same value and bit pattern as sixj(), computed without touching the cache.
Complex sixj_uncached(const SixTuple& t, const Root& root);

/// The defining formula evaluated on `t` as given: no canonicalization, no
/// cache. Symmetry tests compare this across orbit members.
Complex sixj_direct(const SixTuple& t, const Root& root);

/// |sum_s w_s w_m {i j m; k l s}{i j n; k l s} - delta_{mn}|.
/// Requires (i,j,m), (i,j,n), (k,l,m), (k,l,n) admissible.
Real check_orthogonality(Color i, Color j, Color k, Color l, Color m, Color n, const Root& root);

/// |sum_s w_s {i j q; m l s}{j k o; n m s}{k i p; l n s}
///  - {o p q; i j k}{o p q; l m n}|.
/// Requires the 6-tuples (o,p,q,i,j,k) and (o,p,q,l,m,n) admissible.
Real check_biedenharn_elliot(Color i, Color j, Color k, Color l, Color m, Color n, Color o, Color p,
                             Color q, const Root& root);

/// All (i,j,k,l,m,n) valid as check_orthogonality input at level r.
void for_each_orthogonality_input(int r, const std::function<void(const std::array<Color, 6>&)>& fn);

/// All (i,j,k,l,m,n,o,p,q) valid as check_biedenharn_elliot input at level r.
void for_each_be_input(int r, const std::function<void(const std::array<Color, 9>&)>& fn);

/// Uniform rejection samplers over the same input sets.
std::array<Color, 6> sample_orthogonality_input(std::mt19937_64& rng, int r);
std::array<Color, 9> sample_be_input(std::mt19937_64& rng, int r);

/// All admissible 6-tuples at level r.
void for_each_admissible_tuple(int r, const std::function<void(const SixTuple&)>& fn);

/// The six printed symmetries; index 0 is the identity.
SixTuple apply_symmetry(const SixTuple& t, int which);
inline constexpr int kNumSymmetries = 6;

}  // namespace qtv
