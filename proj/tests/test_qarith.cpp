#include "doctest.h"

#include <cstdint>
#include <set>
#include <vector>

#include "polarx/errors.hpp"
#include "polarx/qarith.hpp"

using namespace polarx;
using namespace polarx::qarith;

namespace {

// Independent oracle: Gaussian binomial as an integer polynomial in q via
// the recurrence [n k] = [n-1 k-1] + q^k [n-1 k], evaluated exactly.
// At q = 1 this degenerates to the ordinary binomial coefficient.
std::vector<ExactInt> qbinom_poly(int n, int k) {
  if (k < 0 || k > n) return {};
  std::vector<std::vector<std::vector<ExactInt>>> table(
      n + 1, std::vector<std::vector<ExactInt>>(k + 1));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= std::min(i, k); ++j) {
      if (j == 0 || j == i) {
        table[i][j] = {1};
        continue;
      }
      std::vector<ExactInt> acc = table[i - 1][j - 1];
      const auto& shifted = table[i - 1][j];
      if (acc.size() < shifted.size() + j) acc.resize(shifted.size() + j, 0);
      for (std::size_t d = 0; d < shifted.size(); ++d)
        acc[d + j] += shifted[d];
      table[i][j] = std::move(acc);
    }
  }
  return table[n][k];
}

ExactInt eval_poly(const std::vector<ExactInt>& poly, std::int64_t q) {
  ExactInt acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * q + *it;
  return acc;
}

ExactInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  ExactInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

// Independent oracle: count the 2-dimensional subspaces of F_2^4 by
// collecting span signatures of all independent pairs.
int count_two_subspaces_f2_4() {
  std::set<std::set<int>> spans;
  for (int u = 1; u < 16; ++u)
    for (int v = 1; v < 16; ++v) {
      if (u == v || (u ^ v) == 0) continue;
      spans.insert({u, v, u ^ v});
    }
  return static_cast<int>(spans.size());
}

}  // namespace

TEST_CASE("gauss_binom against the q-Pascal polynomial oracle") {
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) {
      const auto poly = qbinom_poly(n, k);
      CHECK(eval_poly(poly, 1) == binomial(n, k));  // q -> 1 degeneration
      for (std::int64_t q : {2, 3, 4, 5}) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(q);
        CHECK(gauss_binom(n, k, q) == eval_poly(poly, q));
      }
    }
}

TEST_CASE("gauss_binom examples and edge cases") {
  CHECK(count_two_subspaces_f2_4() == 35);
  CHECK(gauss_binom(4, 2, 2) == 35);
  CHECK(gauss_binom(7, 0, 3) == 1);
  CHECK(gauss_binom(5, -1, 2) == 0);
  CHECK(gauss_binom(2, 3, 2) == 0);
  CHECK_THROWS_AS(gauss_binom(-1, 0, 2), ParameterError);
  CHECK_THROWS_AS(gauss_binom(4, 2, 6), ParameterError);   // 6 = 2*3
  CHECK_THROWS_AS(gauss_binom(4, 2, 12), ParameterError);
  CHECK_THROWS_AS(gauss_binom(4, 2, 1), ParameterError);
}

TEST_CASE("gauss_binom symmetry") {
  for (std::int64_t q : {2, 3, 5, 9})
    for (int n = 0; n <= 10; ++n)
      for (int k = 0; k <= n; ++k)
        CHECK(gauss_binom(n, k, q) == gauss_binom(n, n - k, q));
}

TEST_CASE("polar_count") {
  CHECK(polar_count(2, 1, 2) == 15);
  CHECK(polar_count(5, 0, 3) == 1);
  CHECK(polar_count(4, 2, 2) == 5355);
  CHECK(polar_count(4, 2, 2) == ExactInt(35) * 17 * 9);
  CHECK(polar_count(3, 2, 2) == 315);
  CHECK(polar_count(3, 3, 2) == 135);
  CHECK(polar_count(3, 1, 3) == 364);
  CHECK_THROWS_AS(polar_count(3, 4, 2), ParameterError);
  CHECK_THROWS_AS(polar_count(3, -1, 2), ParameterError);
}

TEST_CASE("n_prime") {
  CHECK(n_prime(2, 2, 5, 3) == 1);  // empty product
  CHECK(n_prime(1, 2, 3, 2) == 15);
  CHECK(n_prime(1, 2, 4, 2) == 63);
  CHECK(n_prime(1, 2, 4, 2) == (exact_pow(2, 6) - 1) / (2 - 1));
  CHECK_THROWS_AS(n_prime(3, 2, 5, 2), ParameterError);
  CHECK_THROWS_AS(n_prime(1, 4, 3, 2), ParameterError);
  CHECK(n_prime_or_zero(3, 2, 5, 2) == 0);

  // Containing the zero subspace means no constraint at all.
  for (std::int64_t nu = 1; nu <= 4; ++nu)
    for (std::int64_t m = 0; m <= nu; ++m)
      for (std::int64_t q : {2, 3})
        CHECK(n_prime(0, m, nu, q) == polar_count(nu, m, q));
}

TEST_CASE("g_func") {
  // x = t collapses to the containing count.
  CHECK(g_func(3, 2, 1, 5, 1, 2) == n_prime(1, 3, 5, 2));
  CHECK(g_func(3, 2, 1, 5, 1, 2) == 5355);
  CHECK(g_func(3, 2, 2, 5, 1, 2) == 567);
  CHECK(g_func(3, 2, 1, 5, 1, 2) > g_func(3, 2, 2, 5, 1, 2));

  // Composition re-evaluation.
  const std::int64_t b = 3, c = 2, t = 1, nu = 5, q = 2;
  for (std::int64_t x = t; x <= b; ++x) {
    ExactInt expect = gauss_binom(x, t, q);
    for (std::int64_t i = 0; i < x - t; ++i)
      expect *= gauss_binom(c - t + 1, 1, q);
    expect *= n_prime(x, b, nu, q);
    CHECK(g_func(b, c, x, nu, t, q) == expect);
  }
  CHECK_THROWS_AS(g_func(3, 2, 4, 5, 1, 2), ParameterError);  // x > b
  CHECK_THROWS_AS(g_func(4, 3, 2, 5, 1, 2), ParameterError);  // 2nu < 2b+c+1
}

TEST_CASE("s0") {
  // s = t+1 kills the second term.
  CHECK(s0(4, 2, 2, 1, 2) == n_prime(2, 2, 4, 2));
  CHECK(s0(4, 2, 3, 1, 2) == 3);  // 3*1 - 2*1*0, second count vacuous
  CHECK(s0(5, 3, 3, 1, 2) ==
        gauss_binom(2, 1, 2) * n_prime(2, 3, 5, 2) -
            2 * gauss_binom(2, 2, 2) * n_prime(3, 3, 5, 2));
  CHECK_THROWS_AS(s0(4, 2, 1, 1, 2), ParameterError);  // s <= t
}

TEST_CASE("c0") {
  CHECK(c0(4, 2, 1, 1, 2) == 0);  // m2 = t
  CHECK(c0(4, 2, 2, 1, 2) == 126);
  // Strictly below c1 when the strengthened bound applies.
  CHECK(c1_exact(5, 3, 2, 1, 2) > c0(5, 3, 2, 1, 2));
  CHECK(c1_exact(6, 3, 3, 1, 2) > c0(6, 3, 3, 1, 2));
}

TEST_CASE("c1_exact") {
  CHECK(c1_exact(4, 2, 2, 1, 2) == 201);
  const auto [s1, s2] = c1_factors(4, 2, 2, 1, 2);
  CHECK(s1 == 3);
  CHECK(s2 == 67);

  // Closed form for m2 = 2, t = 1, m1 >= 3.
  for (std::int64_t q : {2, 3})
    for (std::int64_t m1 = 3; m1 <= 5; ++m1)
      for (std::int64_t nu = m1 + 2; nu <= m1 + 4; ++nu) {
        const ExactInt closed =
            (gauss_binom(2, 1, q) * n_prime(2, m1, nu, q) -
             q * n_prime(3, m1, nu, q)) *
            (n_prime(1, 2, nu, q) + q * q);
        CHECK(c1_exact(nu, m1, 2, 1, q) == closed);
      }

  // Always above the s0-based lower bound.
  for (std::int64_t q : {2, 3})
    for (std::int64_t nu = 3; nu <= 7; ++nu)
      for (std::int64_t t = 1; t <= 2; ++t)
        for (std::int64_t m1 = t + 1; m1 < nu; ++m1)
          for (std::int64_t m2 = t + 1; m2 < nu; ++m2)
            CHECK(c1_exact(nu, m1, m2, t, q) >
                  s0(nu, m1, m2 + 1, t, q) * n_prime(t, m2, nu, q));
}

TEST_CASE("c2_exact") {
  CHECK(c2_exact(4, 2, 2, 1, 2) == 187);
  CHECK(c2_exact(4, 2, 2, 1, 2) ==
        ExactInt(1) * (3 * 63 - 2 * 1 * 1));
  CHECK(c2_exact(4, 2, 2, 1, 2) < c1_exact(4, 2, 2, 1, 2));
  // m1 = t+1 leaves just the bracket.
  const auto [s1, s2] = c2_factors(5, 2, 2, 1, 2);
  CHECK(s1 == 1);
  CHECK(c2_exact(5, 2, 2, 1, 2) == s2);
}

TEST_CASE("second-family size identity") {
  // N' + [m2+1 choose 1] - [m2+1-t choose 1] == N' + q^{m2-t+1} [t choose 1]
  for (std::int64_t q : {2, 3, 4})
    for (std::int64_t t = 1; t <= 3; ++t)
      for (std::int64_t m2 = t + 1; m2 <= 5; ++m2) {
        const ExactInt lhs =
            gauss_binom(m2 + 1, 1, q) - gauss_binom(m2 + 1 - t, 1, q);
        const ExactInt rhs = exact_pow(q, m2 - t + 1) * gauss_binom(t, 1, q);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("trivial_product") {
  CHECK(trivial_product(3, 2, 1, 1, 2) == 15);
  CHECK(trivial_product(5, 2, 2, 2, 3) == 1);  // m1 = m2 = t
  CHECK(trivial_product(4, 2, 2, 1, 2) == 3969);
  CHECK(trivial_product(4, 2, 2, 1, 2) > c1_exact(4, 2, 2, 1, 2));
  CHECK(trivial_product(4, 2, 2, 1, 2) > c2_exact(4, 2, 2, 1, 2));
}

TEST_CASE("general_bound") {
  CHECK(general_bound(1, 1, 4, 2, 2, 1, 2) == n_prime(1, 2, 4, 2));
  CHECK(general_bound(1, 2, 4, 2, 2, 1, 2) == 3);
  CHECK_THROWS_AS(general_bound(3, 1, 4, 2, 2, 1, 2), ParameterError);
}

TEST_CASE("predict_extremal") {
  const auto p1 = predict_extremal(4, 2, 2, 1, 2);
  CHECK(p1.tag == StructureTag::kC1Pair);
  CHECK(p1.value == 201);
  CHECK(p1.consistent);
  CHECK(p1.orientation_swappable);

  // m2 = 2t away from the exceptional triples selects the other pair.
  const auto p2 = predict_extremal(7, 4, 2, 1, 2);
  CHECK(p2.tag == StructureTag::kC2Pair);
  CHECK(p2.consistent);
  CHECK(p2.c1 < p2.c2);

  // m2 > 2t always selects the first pair.
  const auto p3 = predict_extremal(8, 3, 3, 1, 2);
  CHECK(p3.tag == StructureTag::kC1Pair);
  CHECK(p3.consistent);
  CHECK(p3.c1 > p3.c2);

  CHECK_THROWS_AS(predict_extremal(4, 2, 1, 1, 2), ParameterError);
}

TEST_CASE("gauss ratio and power bounds, small grid") {
  for (std::int64_t q : {2, 3, 9})
    for (std::int64_t m = 2; m <= 10; ++m)
      for (std::int64_t i = 1; i < m; ++i) {
        const ExactInt mid = exact_pow(q, m) - 1;
        const ExactInt qi = exact_pow(q, i) - 1;
        CHECK(exact_pow(q, m - i) * qi < mid);
        CHECK(mid < exact_pow(q, m - i + 1) * qi);
        const ExactInt gb = gauss_binom(m, i, q);
        CHECK(exact_pow(q, i * (m - i)) < gb);
        CHECK(gb < exact_pow(q, i * (m - i + 1)));
      }
}
