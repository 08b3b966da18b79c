#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polarx::gf {

/// A field element, encoded as its integer index in [0, q):
/// sum_i coeffs[i] * p^i for the little-endian polynomial coefficients.
/// This index is also the wire/file representation.
using Scalar = std::uint32_t;

/// A finite field F_q with q = p^e, fixed modulus, deterministic across
/// runs and platforms. For a given (p, e) the modulus is the monic
/// irreducible polynomial of degree e whose non-leading coefficient vector
/// has the smallest integer encoding, so serialized data is portable.
class FieldSpec {
 public:
  std::int64_t p() const { return p_; }
  std::int64_t e() const { return e_; }
  std::int64_t q() const { return q_; }

  /// Monic modulus, e+1 little-endian coefficients (x itself for e = 1).
  const std::vector<Scalar>& modulus() const { return modulus_; }

  Scalar add(Scalar a, Scalar b) const;
  Scalar sub(Scalar a, Scalar b) const;
  Scalar neg(Scalar a) const;
  Scalar mul(Scalar a, Scalar b) const;
  /// Multiplicative inverse; throws DomainError for a = 0.
  Scalar inv(Scalar a) const;

  /// Little-endian base-p digits of an element index.
  std::vector<Scalar> coeffs(Scalar a) const;
  Scalar from_coeffs(const std::vector<Scalar>& c) const;

  bool operator==(const FieldSpec& other) const = default;

  /// Canonical one-line description; equal fields serialize identically.
  std::string serialize() const;

 private:
  friend FieldSpec field_make(std::int64_t p, std::int64_t e);
  FieldSpec() = default;

  Scalar mul_generic(Scalar a, Scalar b) const;

  std::int64_t p_ = 0, e_ = 0, q_ = 0;
  std::vector<Scalar> modulus_;
  // Full operation tables for small q; empty means compute on the fly.
  std::vector<Scalar> add_tab_, mul_tab_, inv_tab_;
};

/// Construct F_{p^e}. Requires p prime and 1 <= e <= 4 (desk-scale cap).
FieldSpec field_make(std::int64_t p, std::int64_t e);

/// Construct F_q from q = p^e.
FieldSpec field_from_order(std::int64_t q);

/// All q elements: zero first, ascending index order (lexicographic on the
/// big-endian coefficient vector).
std::vector<Scalar> enumerate_scalars(const FieldSpec& f);

}  // namespace polarx::gf
