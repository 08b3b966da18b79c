#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polarx/exact.hpp"
#include "polarx/gf.hpp"
#include "polarx/linalg.hpp"

namespace polarx::symplectic {

using gf::FieldSpec;
using gf::Scalar;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// F_q^{2*nu} equipped with the standard non-degenerate alternating form
///   f(x, y) = sum_{i=0}^{nu-1} (x_i y_{nu+i} - x_{nu+i} y_i),
/// i.e. the Gram matrix [[0, I], [-I, 0]]. All counts are invariant under
/// symplectic equivalence, so fixing one form keeps caches canonical.
struct SymplecticSpace {
  FieldSpec field;
  std::uint32_t nu = 0;

  std::uint32_t dim() const { return 2 * nu; }
};

SymplecticSpace make_space(std::int64_t nu, std::int64_t q);

/// The 2*nu x 2*nu Gram matrix of the standard form.
linalg::Mat gram_matrix(const SymplecticSpace& space);

/// A subspace of F_q^{2*nu}, stored as the unique reduced row echelon basis
/// of its row space. Representation equality is subspace equality.
struct Subspace {
  std::uint32_t ambient = 0;
  std::uint32_t rank = 0;
  std::vector<Scalar> data;  // rank x ambient, row-major, RREF

  std::span<const Scalar> row(std::uint32_t r) const {
    return {data.data() + r * ambient, ambient};
  }
  std::uint32_t dim() const { return rank; }
  std::vector<std::uint32_t> pivots() const;

  bool operator==(const Subspace& other) const = default;
};

/// Total order: lexicographic on (pivot columns, entry list). This is the
/// order enumeration streams are emitted in.
bool subspace_less(const Subspace& a, const Subspace& b);

Subspace zero_subspace(std::uint32_t ambient);

/// Canonical (RREF) subspace spanned by the given rows; zero rows drop out.
Subspace canonicalize(const FieldSpec& f, std::uint32_t ambient,
                      const std::vector<std::vector<Scalar>>& rows);
Subspace canonicalize(const FieldSpec& f, linalg::Mat m);

/// f(u, v) for the standard alternating form.
Scalar form_eval(const SymplecticSpace& space, std::span<const Scalar> u,
                 std::span<const Scalar> v);

/// True iff the form vanishes on all pairs of basis vectors of s.
bool is_isotropic(const SymplecticSpace& space, const Subspace& s);

/// (m, s): dimension and half the rank of the restricted Gram matrix.
/// s = 0 iff the subspace is totally isotropic.
struct SubspaceType {
  std::uint32_t m = 0;
  std::uint32_t s = 0;
  bool operator==(const SubspaceType&) const = default;
};

SubspaceType subspace_type(const SymplecticSpace& space, const Subspace& s);

/// Visit every m-dimensional totally isotropic subspace exactly once, in
/// canonical order. Generates RREF matrices pivot pattern by pivot pattern,
/// extending row by row and pruning any prefix on which the form does not
/// vanish. The callback returns false to stop early.
/// Throws FeasibilityError when the exact predicted count exceeds cap.
void for_each_isotropic(const SymplecticSpace& space, std::uint32_t m,
                        std::uint64_t cap,
                        const std::function<bool(const Subspace&)>& fn);

std::vector<Subspace> enumerate_isotropic(
    const SymplecticSpace& space, std::uint32_t m,
    std::uint64_t cap = kDefaultEnumerationCap);

/// All m-dimensional totally isotropic subspaces containing a, each once,
/// canonical order. a must be totally isotropic (DomainError otherwise).
std::vector<Subspace> enumerate_isotropic_containing(
    const SymplecticSpace& space, const Subspace& a, std::uint32_t m,
    std::uint64_t cap = kDefaultEnumerationCap);

/// All totally isotropic a-dimensional subspaces of A (any A, isotropic or
/// not), canonical order.
std::vector<Subspace> subspaces_within(const SymplecticSpace& space,
                                       const Subspace& A, std::uint32_t a);

Subspace sum(const FieldSpec& f, const Subspace& a, const Subspace& b);
Subspace intersect(const FieldSpec& f, const Subspace& a, const Subspace& b);
/// True iff b is contained in a.
bool contains(const FieldSpec& f, const Subspace& a, const Subspace& b);
/// {x : f(v, x) = 0 for all v in a}; dim = 2*nu - dim a.
Subspace perp(const SymplecticSpace& space, const Subspace& a);

std::uint32_t intersection_dim(const FieldSpec& f, const Subspace& a,
                               const Subspace& b);

/// The four lattice operations in one call.
struct LinearOps {
  Subspace intersection;
  Subspace subspace_sum;
  bool contains = false;  // a contains b
  Subspace perp_of_a;
};

LinearOps linear_ops(const SymplecticSpace& space, const Subspace& a,
                     const Subspace& b);

}  // namespace polarx::symplectic
