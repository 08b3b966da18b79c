#pragma once

#include <cstdint>
#include <optional>

namespace polarx {

struct PrimePower {
  std::int64_t p = 0;  // prime
  std::int64_t e = 0;  // exponent >= 1
};

bool is_prime(std::int64_t n);

/// Factor q as p^e with p prime; nullopt when q is not a prime power >= 2.
std::optional<PrimePower> factor_prime_power(std::int64_t q);

/// Parameter bundle shared by the formula, verification and CLI layers.
/// Each operation validates its own hypothesis; Params performs only the
/// universal checks (q a prime power, everything positive where required).
struct Params {
  std::int64_t nu = 0;
  std::int64_t q = 0;
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t t = 0;
};

}  // namespace polarx
