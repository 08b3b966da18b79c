#pragma once

#include <cstdint>
#include <utility>

#include "polarx/exact.hpp"

namespace polarx::qarith {

using std::int64_t;

/// Gaussian binomial coefficient: the number of k-dimensional subspaces of
/// an n-dimensional space over the q-element field,
///   prod_{0 <= i < k} (q^{n-i} - 1) / (q^{k-i} - 1).
/// Returns 1 for k = 0 and 0 for k < 0 or k > n. Division is exact.
/// Throws ParameterError when n < 0 or q is not a prime power.
ExactInt gauss_binom(int64_t n, int64_t k, int64_t q);

/// Number of m-dimensional totally isotropic subspaces of a 2*nu-dimensional
/// symplectic space over the q-element field:
///   [nu choose m]_q * prod_{i=0}^{m-1} (q^{nu-i} + 1).
/// Requires 0 <= m <= nu.
ExactInt polar_count(int64_t nu, int64_t m, int64_t q);

/// Number of m-dimensional totally isotropic subspaces containing a fixed
/// m1-dimensional one:
///   prod_{i=1}^{m-m1} (q^{2(nu-m+i)} - 1) / (q^i - 1).
/// Requires 0 <= m1 <= m <= nu.
ExactInt n_prime(int64_t m1, int64_t m, int64_t nu, int64_t q);

/// n_prime extended by the convention that the count is 0 when m1 > m
/// (no m-dimensional subspace contains a larger one). Used by the closed
/// forms below so they evaluate at boundary parameters.
ExactInt n_prime_or_zero(int64_t m1, int64_t m, int64_t nu, int64_t q);

/// Per-family factor of the cover-parameter upper bound, as a function of
/// the cover dimension x:
///   [x choose t]_q * [c-t+1 choose 1]_q^{x-t} * n_prime(x, b, nu, q).
/// Strictly decreasing in x on t <= x <= b under 2*nu >= 2b+c+1.
/// Requires t >= 1, c >= t, t <= x <= b < nu, 2*nu >= 2b+c+1.
ExactInt g_func(int64_t b, int64_t c, int64_t x, int64_t nu, int64_t t,
                int64_t q);

/// Signed auxiliary quantity
///   [s-t choose 1] * N'(t+1;m;2nu) - q * [s-t choose 2] * N'(t+2;m;2nu),
/// where N' uses the m1 > m => 0 convention. May be negative.
/// Requires t >= 1, s > t, t+1 <= m <= nu.
ExactInt s0(int64_t nu, int64_t m, int64_t s, int64_t t, int64_t q);

/// Comparison baseline q * [m2-t choose 1] * N'(t+1;m1;2nu) * N'(t;m2;2nu).
/// Requires t >= 1, t <= m2 <= nu, t+1 <= m1 <= nu.
ExactInt c0(int64_t nu, int64_t m1, int64_t m2, int64_t t, int64_t q);

/// Exact product of sizes of the pointed-extension pair construction
/// (members through a fixed t-space meeting a fixed (m2+1)-space in
/// dimension > t, paired with the pencil-plus-hyperplanes family).
/// Requires t >= 1, m1 >= t+1, m2 >= t+1, m1 <= nu, m2+1 <= nu.
ExactInt c1_exact(int64_t nu, int64_t m1, int64_t m2, int64_t t, int64_t q);

/// The two factors of c1_exact: {side-1 size, side-2 size}.
std::pair<ExactInt, ExactInt> c1_factors(int64_t nu, int64_t m1, int64_t m2,
                                         int64_t t, int64_t q);

/// Exact product of sizes of the fixed-(t+1)-space pair construction:
///   N'(t+1;m1;2nu) * ([t+1 choose 1] N'(t;m2;2nu) - q [t choose 1] N'(t+1;m2;2nu)).
/// Requires t >= 1, m1 >= t+1, m1 <= nu, t <= m2 <= nu.
ExactInt c2_exact(int64_t nu, int64_t m1, int64_t m2, int64_t t, int64_t q);

/// The two factors of c2_exact: {side-1 size, side-2 size}.
std::pair<ExactInt, ExactInt> c2_factors(int64_t nu, int64_t m1, int64_t m2,
                                         int64_t t, int64_t q);

/// Product of the sizes of the two common-t-space families:
/// N'(t;m1;2nu) * N'(t;m2;2nu). Requires t <= m2 <= m1 <= nu, t >= 1.
ExactInt trivial_product(int64_t nu, int64_t m1, int64_t m2, int64_t t,
                         int64_t q);

/// Upper bound for the size of a family in P_m1 with t-cover number tau_f
/// whose cross-t-intersecting partner in P_m2 has t-cover number tau_g:
///   [tau_f choose t] * [m2-t+1 choose 1]^{tau_g - t} * N'(tau_g;m1;2nu).
/// Requires t >= 1, t <= tau_f <= m2, t <= tau_g <= m1, nu > m1, nu > m2,
/// m2 >= t, 2*nu >= 2*m1 + m2 - t.
ExactInt general_bound(int64_t tau_f, int64_t tau_g, int64_t nu, int64_t m1,
                       int64_t m2, int64_t t, int64_t q);

enum class StructureTag { kC1Pair, kC2Pair };

const char* to_string(StructureTag tag);

/// Which construction is predicted to maximise the product of sizes among
/// non-trivial cross-t-intersecting pairs, with its exact value.
struct ExtremalPrediction {
  StructureTag tag;      // predicted maximiser, from the case split
  ExactInt value;        // max(c1, c2)
  ExactInt c1;
  ExactInt c2;
  ExactInt trivial;      // the overall (trivial-pair) optimum
  bool orientation_swappable = false;  // m1 == m2: both orientations occur
  bool consistent = false;  // tag agrees with the exact comparison
};

/// Case split: C1-pair when m2 > 2t or (m1,m2,t) is (2,2,1) or (3,2,1),
/// C2-pair otherwise. Requires m1 >= m2 >= t+1, m1 <= nu, m2 < nu; the
/// `consistent` field reports whether the exact comparison agrees with
/// the tag at these parameters.
ExtremalPrediction predict_extremal(int64_t nu, int64_t m1, int64_t m2,
                                    int64_t t, int64_t q);

}  // namespace polarx::qarith
