#include "polarx/qarith.hpp"

#include <sstream>
#include <vector>

#include "polarx/errors.hpp"
#include "polarx/params.hpp"

namespace polarx::qarith {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw ParameterError(what);
}

void require_prime_power(int64_t q) {
  if (!factor_prime_power(q)) {
    std::ostringstream os;
    os << "q = " << q << " is not a prime power";
    throw ParameterError(os.str());
  }
}

ExactInt exact_div(ExactInt num, const ExactInt& den) {
  ExactInt quo, rem;
  boost::multiprecision::divide_qr(num, den, quo, rem);
  if (rem != 0) throw DomainError("inexact division in q-analog product");
  return quo;
}

}  // namespace

ExactInt gauss_binom(int64_t n, int64_t k, int64_t q) {
  require(n >= 0, "gauss_binom: n must be >= 0");
  require_prime_power(q);
  if (k < 0 || k > n) return 0;
  ExactInt num = 1, den = 1;
  for (int64_t i = 0; i < k; ++i) {
    num *= exact_pow(q, n - i) - 1;
    den *= exact_pow(q, k - i) - 1;
  }
  return exact_div(std::move(num), den);
}

ExactInt polar_count(int64_t nu, int64_t m, int64_t q) {
  require(nu >= 1, "polar_count: nu must be >= 1");
  require(m >= 0 && m <= nu, "polar_count: need 0 <= m <= nu");
  ExactInt r = gauss_binom(nu, m, q);
  for (int64_t i = 0; i < m; ++i) r *= exact_pow(q, nu - i) + 1;
  return r;
}

ExactInt n_prime(int64_t m1, int64_t m, int64_t nu, int64_t q) {
  require(m1 >= 0, "n_prime: m1 must be >= 0");
  require(m1 <= m, "n_prime: need m1 <= m");
  require(m <= nu, "n_prime: need m <= nu");
  require_prime_power(q);
  ExactInt num = 1, den = 1;
  for (int64_t i = 1; i <= m - m1; ++i) {
    num *= exact_pow(q, 2 * (nu - m + i)) - 1;
    den *= exact_pow(q, i) - 1;
  }
  return exact_div(std::move(num), den);
}

ExactInt n_prime_or_zero(int64_t m1, int64_t m, int64_t nu, int64_t q) {
  if (m1 > m) return 0;
  return n_prime(m1, m, nu, q);
}

ExactInt g_func(int64_t b, int64_t c, int64_t x, int64_t nu, int64_t t,
                int64_t q) {
  require(t >= 1, "g_func: t must be >= 1");
  require(c >= t, "g_func: need c >= t");
  require(t <= x && x <= b, "g_func: need t <= x <= b");
  require(b < nu, "g_func: need b < nu");
  require(2 * nu >= 2 * b + c + 1, "g_func: need 2*nu >= 2b+c+1");
  ExactInt r = gauss_binom(x, t, q);
  const ExactInt step = gauss_binom(c - t + 1, 1, q);
  for (int64_t i = 0; i < x - t; ++i) r *= step;
  return r * n_prime(x, b, nu, q);
}

ExactInt s0(int64_t nu, int64_t m, int64_t s, int64_t t, int64_t q) {
  require(t >= 1, "s0: t must be >= 1");
  require(s > t, "s0: need s > t");
  require(t + 1 <= m && m <= nu, "s0: need t+1 <= m <= nu");
  return gauss_binom(s - t, 1, q) * n_prime(t + 1, m, nu, q) -
         q * gauss_binom(s - t, 2, q) * n_prime_or_zero(t + 2, m, nu, q);
}

ExactInt c0(int64_t nu, int64_t m1, int64_t m2, int64_t t, int64_t q) {
  require(t >= 1, "c0: t must be >= 1");
  require(t <= m2 && m2 <= nu, "c0: need t <= m2 <= nu");
  require(t + 1 <= m1 && m1 <= nu, "c0: need t+1 <= m1 <= nu");
  return q * gauss_binom(m2 - t, 1, q) * n_prime(t + 1, m1, nu, q) *
         n_prime(t, m2, nu, q);
}

std::pair<ExactInt, ExactInt> c1_factors(int64_t nu, int64_t m1, int64_t m2,
                                         int64_t t, int64_t q) {
  require(t >= 1, "c1: t must be >= 1");
  require(m1 >= t + 1 && m1 <= nu, "c1: need t+1 <= m1 <= nu");
  require(m2 >= t + 1 && m2 + 1 <= nu, "c1: need t+1 <= m2 <= nu-1");

  // Side 1 counts members through a fixed t-space T meeting a fixed
  // (m2+1)-space M in dimension >= t+1. With
  //   L_j = |{(I,F): T subset I subset M, dim I = j, I subset F}|
  //       = [m2+1-t choose j-t] * N'(j;m1;2nu)
  //       = sum_{i>=j} [i-t choose j-t] * A_i,
  // where A_i counts members with dim(F cap M) = i, the A_i follow by
  // downward recursion and side 1 is sum_{i >= t+1} A_i.
  const int64_t top = m2 + 1;
  std::vector<ExactInt> a(static_cast<size_t>(top - t) + 1);  // a[i-t] = A_i
  ExactInt side1 = 0;
  for (int64_t i = top; i >= t + 1; --i) {
    ExactInt l = gauss_binom(m2 + 1 - t, i - t, q) *
                 n_prime_or_zero(i, m1, nu, q);
    for (int64_t j = i + 1; j <= top; ++j)
      l -= gauss_binom(j - t, i - t, q) * a[static_cast<size_t>(j - t)];
    a[static_cast<size_t>(i - t)] = l;
    side1 += l;
  }

  // Side 2: members through T, plus the m2-subspaces of M, minus overlap.
  ExactInt side2 = n_prime(t, m2, nu, q) + gauss_binom(m2 + 1, 1, q) -
                   gauss_binom(m2 + 1 - t, 1, q);
  return {std::move(side1), std::move(side2)};
}

ExactInt c1_exact(int64_t nu, int64_t m1, int64_t m2, int64_t t, int64_t q) {
  auto [s1, s2] = c1_factors(nu, m1, m2, t, q);
  return s1 * s2;
}

std::pair<ExactInt, ExactInt> c2_factors(int64_t nu, int64_t m1, int64_t m2,
                                         int64_t t, int64_t q) {
  require(t >= 1, "c2: t must be >= 1");
  require(m1 >= t + 1 && m1 <= nu, "c2: need t+1 <= m1 <= nu");
  require(t <= m2 && m2 <= nu, "c2: need t <= m2 <= nu");
  ExactInt side1 = n_prime(t + 1, m1, nu, q);
  ExactInt side2 = gauss_binom(t + 1, 1, q) * n_prime(t, m2, nu, q) -
                   q * gauss_binom(t, 1, q) * n_prime_or_zero(t + 1, m2, nu, q);
  return {std::move(side1), std::move(side2)};
}

ExactInt c2_exact(int64_t nu, int64_t m1, int64_t m2, int64_t t, int64_t q) {
  auto [s1, s2] = c2_factors(nu, m1, m2, t, q);
  return s1 * s2;
}

ExactInt trivial_product(int64_t nu, int64_t m1, int64_t m2, int64_t t,
                         int64_t q) {
  require(t >= 1, "trivial_product: t must be >= 1");
  require(t <= m2 && m2 <= m1 && m1 <= nu,
          "trivial_product: need t <= m2 <= m1 <= nu");
  return n_prime(t, m1, nu, q) * n_prime(t, m2, nu, q);
}

ExactInt general_bound(int64_t tau_f, int64_t tau_g, int64_t nu, int64_t m1,
                       int64_t m2, int64_t t, int64_t q) {
  require(t >= 1, "general_bound: t must be >= 1");
  require(t <= tau_f && tau_f <= m2, "general_bound: need t <= tau_f <= m2");
  require(t <= tau_g && tau_g <= m1, "general_bound: need t <= tau_g <= m1");
  require(nu > m1 && nu > m2, "general_bound: need nu > m1, m2");
  require(2 * nu >= 2 * m1 + m2 - t, "general_bound: need 2*nu >= 2m1+m2-t");
  ExactInt r = gauss_binom(tau_f, t, q);
  const ExactInt step = gauss_binom(m2 - t + 1, 1, q);
  for (int64_t i = 0; i < tau_g - t; ++i) r *= step;
  return r * n_prime(tau_g, m1, nu, q);
}

const char* to_string(StructureTag tag) {
  return tag == StructureTag::kC1Pair ? "C1-pair" : "C2-pair";
}

ExtremalPrediction predict_extremal(int64_t nu, int64_t m1, int64_t m2,
                                    int64_t t, int64_t q) {
  require(t >= 1, "predict_extremal: t must be >= 1");
  require(m1 >= m2 && m2 >= t + 1, "predict_extremal: need m1 >= m2 >= t+1");
  require(m1 <= nu && m2 + 1 <= nu,
          "predict_extremal: need m1 <= nu and m2 < nu");
  const bool exceptional =
      (m1 == 2 && m2 == 2 && t == 1) || (m1 == 3 && m2 == 2 && t == 1);
  ExtremalPrediction p{
      (m2 > 2 * t || exceptional) ? StructureTag::kC1Pair
                                  : StructureTag::kC2Pair,
      0,
      c1_exact(nu, m1, m2, t, q),
      c2_exact(nu, m1, m2, t, q),
      trivial_product(nu, m1, m2, t, q),
      m1 == m2,
      false};
  p.value = p.c1 > p.c2 ? p.c1 : p.c2;
  p.consistent = (p.tag == StructureTag::kC1Pair) == (p.c1 > p.c2);
  return p;
}

}  // namespace polarx::qarith
