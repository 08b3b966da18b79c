#include "polarx/gf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "polarx/errors.hpp"
#include "polarx/params.hpp"

namespace polarx::gf {

namespace {

constexpr std::int64_t kTableLimit = 256;  // build q x q tables up to here
constexpr std::int64_t kMaxOrder = 1 << 20;

using Poly = std::vector<Scalar>;  // little-endian, over F_p

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Scalar eval_mod_p(const Poly& a, Scalar x, std::int64_t p) {
  std::int64_t acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    acc = (acc * x + *it) % p;
  return static_cast<Scalar>(acc);
}

// Remainder of a by monic divisor d over F_p.
Poly poly_rem(Poly a, const Poly& d, std::int64_t p) {
  const std::size_t dd = d.size() - 1;  // degree of d (monic)
  while (a.size() > dd) {
    const std::int64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dd;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dd; ++i) {
        std::int64_t v = a[shift + i] - lead * d[i] % p;
        a[shift + i] = static_cast<Scalar>(((v % p) + p) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool has_root(const Poly& a, std::int64_t p) {
  for (std::int64_t x = 0; x < p; ++x)
    if (eval_mod_p(a, static_cast<Scalar>(x), p) == 0) return true;
  return false;
}

// Exhaustive irreducibility test for degree <= 4: a reducible polynomial of
// degree <= 3 has a root; a rootless quartic can only split into two monic
// irreducible quadratics, so trial-divide by every monic quadratic.
bool is_irreducible(const Poly& a, std::int64_t p) {
  const std::size_t deg = a.size() - 1;
  if (deg == 1) return true;
  if (has_root(a, p)) return false;
  if (deg <= 3) return true;
  for (std::int64_t c1 = 0; c1 < p; ++c1) {
    for (std::int64_t c0 = 0; c0 < p; ++c0) {
      Poly d{static_cast<Scalar>(c0), static_cast<Scalar>(c1), 1};
      if (trim(poly_rem(a, d, p)).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Scalar> FieldSpec::coeffs(Scalar a) const {
  std::vector<Scalar> c(static_cast<std::size_t>(e_));
  for (auto& d : c) {
    d = static_cast<Scalar>(a % p_);
    a = static_cast<Scalar>(a / p_);
  }
  return c;
}

Scalar FieldSpec::from_coeffs(const std::vector<Scalar>& c) const {
  std::int64_t v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * p_ + *it;
  return static_cast<Scalar>(v);
}

Scalar FieldSpec::add(Scalar a, Scalar b) const {
  if (!add_tab_.empty()) return add_tab_[a * q_ + b];
  std::int64_t r = 0, scale = 1;
  for (std::int64_t i = 0; i < e_; ++i) {
    r += (a % p_ + b % p_) % p_ * scale;
    a /= static_cast<Scalar>(p_);
    b /= static_cast<Scalar>(p_);
    scale *= p_;
  }
  return static_cast<Scalar>(r);
}

Scalar FieldSpec::neg(Scalar a) const {
  std::int64_t r = 0, scale = 1;
  for (std::int64_t i = 0; i < e_; ++i) {
    r += (p_ - a % p_) % p_ * scale;
    a /= static_cast<Scalar>(p_);
    scale *= p_;
  }
  return static_cast<Scalar>(r);
}

Scalar FieldSpec::sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

Scalar FieldSpec::mul_generic(Scalar a, Scalar b) const {
  const Poly pa = coeffs(a), pb = coeffs(b);
  Poly prod(static_cast<std::size_t>(2 * e_ - 1), 0);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i] == 0) continue;
    for (std::size_t j = 0; j < pb.size(); ++j)
      prod[i + j] = static_cast<Scalar>(
          (prod[i + j] + static_cast<std::int64_t>(pa[i]) * pb[j]) % p_);
  }
  Poly r = poly_rem(std::move(prod), modulus_, p_);
  r.resize(static_cast<std::size_t>(e_), 0);
  return from_coeffs(r);
}

Scalar FieldSpec::mul(Scalar a, Scalar b) const {
  if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
  return mul_generic(a, b);
}

Scalar FieldSpec::inv(Scalar a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (!inv_tab_.empty()) return inv_tab_[a];
  // a^(q-2) by square-and-multiply.
  Scalar r = 1, base = a;
  std::int64_t exp = q_ - 2;
  while (exp > 0) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

std::string FieldSpec::serialize() const {
  std::ostringstream os;
  os << "GF p=" << p_ << " e=" << e_ << " modulus=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) os << ",";
    os << modulus_[i];
  }
  return os.str();
}

FieldSpec field_make(std::int64_t p, std::int64_t e) {
  if (!is_prime(p)) throw ParameterError("field_make: p must be prime");
  if (e < 1 || e > 4) throw ParameterError("field_make: need 1 <= e <= 4");
  std::int64_t q = 1;
  for (std::int64_t i = 0; i < e; ++i) q *= p;
  if (q > kMaxOrder) throw ParameterError("field_make: field order too large");

  FieldSpec f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = q;

  if (e == 1) {
    f.modulus_ = {0, 1};  // x; never used by prime-field arithmetic
  } else {
    // Smallest non-leading coefficient encoding giving an irreducible poly.
    std::int64_t qe = 1;
    for (std::int64_t i = 0; i < e; ++i) qe *= p;
    for (std::int64_t v = 0; v < qe; ++v) {
      Poly cand(static_cast<std::size_t>(e) + 1, 0);
      std::int64_t rest = v;
      for (std::int64_t i = 0; i < e; ++i) {
        cand[static_cast<std::size_t>(i)] = static_cast<Scalar>(rest % p);
        rest /= p;
      }
      cand[static_cast<std::size_t>(e)] = 1;
      if (is_irreducible(cand, p)) {
        f.modulus_ = std::move(cand);
        break;
      }
    }
  }

  if (q <= kTableLimit) {
    f.add_tab_.resize(static_cast<std::size_t>(q * q));
    f.mul_tab_.resize(static_cast<std::size_t>(q * q));
    f.inv_tab_.assign(static_cast<std::size_t>(q), 0);
    for (Scalar a = 0; a < q; ++a) {
      for (Scalar b = 0; b < q; ++b) {
        Scalar s;  // add without the (not yet ready) table
        {
          std::int64_t r = 0, scale = 1;
          Scalar x = a, y = b;
          for (std::int64_t i = 0; i < f.e_; ++i) {
            r += (x % p + y % p) % p * scale;
            x /= static_cast<Scalar>(p);
            y /= static_cast<Scalar>(p);
            scale *= p;
          }
          s = static_cast<Scalar>(r);
        }
        f.add_tab_[a * q + b] = s;
        const Scalar m = f.mul_generic(a, b);
        f.mul_tab_[a * q + b] = m;
        if (m == 1) f.inv_tab_[a] = b;
      }
    }
  }
  return f;
}

FieldSpec field_from_order(std::int64_t q) {
  auto pp = factor_prime_power(q);
  if (!pp) throw ParameterError("field order is not a prime power");
  return field_make(pp->p, pp->e);
}

std::vector<Scalar> enumerate_scalars(const FieldSpec& f) {
  std::vector<Scalar> all(static_cast<std::size_t>(f.q()));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace polarx::gf
