#include "polarx/params.hpp"

namespace polarx {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::optional<PrimePower> factor_prime_power(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = q;
  // Smallest prime factor; q is a prime power iff q is a power of it.
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::int64_t e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return std::nullopt;
  return PrimePower{p, e};
}

}  // namespace polarx
