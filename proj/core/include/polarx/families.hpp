#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polarx/symplectic.hpp"

namespace polarx::families {

using symplectic::Subspace;
using symplectic::SymplecticSpace;
using symplectic::kDefaultEnumerationCap;

/// A finite set of equal-dimension totally isotropic subspaces, kept
/// sorted in canonical subspace order (set semantics, deterministic
/// iteration).
struct Family {
  std::uint32_t m = 0;
  std::vector<Subspace> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool operator==(const Family& other) const = default;
};

/// Sorts, deduplicates and validates member dimensions.
Family make_family(const SymplecticSpace& space, std::uint32_t m,
                   std::vector<Subspace> members);

struct CrossPair {
  Family f1;
  Family f2;
  std::uint32_t t = 0;
};

/// Result of the exhaustive cross-t-intersection test; on failure carries
/// the first violating pair in canonical order.
struct CrossCheck {
  bool ok = true;
  std::optional<std::pair<Subspace, Subspace>> witness;
  std::uint32_t witness_dim = 0;
};

/// Result of the triviality test: the first common t-dimensional core in
/// canonical order, when one exists.
struct TrivialityCheck {
  bool trivial = false;
  std::optional<Subspace> common_core;
};

/// Minimum t-cover dimension together with every witness at that dimension.
struct CoverReport {
  std::uint32_t tau = 0;
  std::vector<Subspace> witnesses;
};

/// Members of P_{m1} through T that meet M in dimension >= t+1.
/// Requires T subset M, both totally isotropic, dim T = t.
Family build_c1(const SymplecticSpace& space, const Subspace& M,
                const Subspace& T, std::uint32_t m1, std::uint32_t t,
                std::uint64_t cap = kDefaultEnumerationCap);

/// Members of P_{m2} through T, together with all m2-subspaces of M.
/// Requires dim M = m2 + 1, T subset M, both totally isotropic.
Family build_c2(const SymplecticSpace& space, const Subspace& M,
                const Subspace& T, std::uint32_t m2,
                std::uint64_t cap = kDefaultEnumerationCap);

/// Members of P_{m1} containing S.
Family build_c3(const SymplecticSpace& space, const Subspace& S,
                std::uint32_t m1, std::uint64_t cap = kDefaultEnumerationCap);

/// Members of P_{m2} meeting S in dimension >= t. Requires dim S = t + 1.
Family build_c4(const SymplecticSpace& space, const Subspace& S,
                std::uint32_t m2, std::uint32_t t,
                std::uint64_t cap = kDefaultEnumerationCap);

/// Members of P_m containing the t-dimensional T.
Family build_trivial(const SymplecticSpace& space, const Subspace& T,
                     std::uint32_t m,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Exhaustively verifies dim(F1 cap F2) >= t over all cross pairs.
CrossCheck cross_t_check(const SymplecticSpace& space, const CrossPair& pair);

/// True iff some t-dimensional totally isotropic subspace lies in every
/// member of both families. Any common core must sit inside each member,
/// so only the t-subspaces of one smallest-dimension member are searched.
/// Both sides must be non-empty (DomainError otherwise).
TrivialityCheck is_trivial_pair(const SymplecticSpace& space,
                                const CrossPair& pair);

/// Exact minimum t-cover dimension, scanning x = t, t+1, ... over P_x, and
/// all witnesses at the minimum. Family must be non-empty; throws
/// DomainError when no totally isotropic t-cover exists at any dimension.
CoverReport tau(const SymplecticSpace& space, const Family& family,
                std::uint32_t t, std::uint64_t cap = kDefaultEnumerationCap);

/// {G in P_{m_other} : dim(G cap F) >= t for all F in family}. Antitone in
/// the family; closure of the empty family is all of P_{m_other}.
Family closure(const SymplecticSpace& space, const Family& family,
               std::uint32_t m_other, std::uint32_t t,
               std::uint64_t cap = kDefaultEnumerationCap);

/// Same, filtering a caller-provided enumeration of P_{m_other}.
Family closure_over(const SymplecticSpace& space, const Family& family,
                    const std::vector<Subspace>& universe, std::uint32_t t);

/// True iff f1 and f2 are mutual closure fixpoints.
bool is_maximal_pair(const SymplecticSpace& space, const CrossPair& pair,
                     std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace polarx::families
