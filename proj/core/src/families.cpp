#include "polarx/families.hpp"

#include <algorithm>

#include "polarx/errors.hpp"

namespace polarx::families {

using symplectic::contains;
using symplectic::enumerate_isotropic;
using symplectic::enumerate_isotropic_containing;
using symplectic::intersection_dim;
using symplectic::is_isotropic;
using symplectic::subspace_less;
using symplectic::subspaces_within;

Family make_family(const SymplecticSpace& space, std::uint32_t m,
                   std::vector<Subspace> members) {
  for (const auto& s : members) {
    if (s.rank != m) throw DomainError("family member has wrong dimension");
    if (!is_isotropic(space, s))
      throw DomainError("family member is not totally isotropic");
  }
  std::sort(members.begin(), members.end(), subspace_less);
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Family{m, std::move(members)};
}

namespace {

void require_isotropic(const SymplecticSpace& space, const Subspace& s,
                       const char* what) {
  if (!is_isotropic(space, s)) throw DomainError(what);
}

}  // namespace

Family build_c1(const SymplecticSpace& space, const Subspace& M,
                const Subspace& T, std::uint32_t m1, std::uint32_t t,
                std::uint64_t cap) {
  require_isotropic(space, M, "build_c1: M is not totally isotropic");
  require_isotropic(space, T, "build_c1: T is not totally isotropic");
  if (T.rank != t) throw DomainError("build_c1: dim T != t");
  if (!contains(space.field, M, T)) throw DomainError("build_c1: T not in M");
  std::vector<Subspace> members;
  symplectic::for_each_isotropic(space, m1, cap, [&](const Subspace& F) {
    if (contains(space.field, F, T) &&
        intersection_dim(space.field, F, M) >= t + 1)
      members.push_back(F);
    return true;
  });
  return Family{m1, std::move(members)};
}

Family build_c2(const SymplecticSpace& space, const Subspace& M,
                const Subspace& T, std::uint32_t m2, std::uint64_t cap) {
  require_isotropic(space, M, "build_c2: M is not totally isotropic");
  require_isotropic(space, T, "build_c2: T is not totally isotropic");
  if (M.rank != m2 + 1) throw DomainError("build_c2: dim M != m2 + 1");
  if (!contains(space.field, M, T)) throw DomainError("build_c2: T not in M");
  std::vector<Subspace> members;
  symplectic::for_each_isotropic(space, m2, cap, [&](const Subspace& F) {
    if (contains(space.field, F, T)) members.push_back(F);
    return true;
  });
  auto inside = subspaces_within(space, M, m2);
  members.insert(members.end(), inside.begin(), inside.end());
  return make_family(space, m2, std::move(members));
}

Family build_c3(const SymplecticSpace& space, const Subspace& S,
                std::uint32_t m1, std::uint64_t cap) {
  require_isotropic(space, S, "build_c3: S is not totally isotropic");
  return Family{m1, enumerate_isotropic_containing(space, S, m1, cap)};
}

Family build_c4(const SymplecticSpace& space, const Subspace& S,
                std::uint32_t m2, std::uint32_t t, std::uint64_t cap) {
  require_isotropic(space, S, "build_c4: S is not totally isotropic");
  if (S.rank != t + 1) throw DomainError("build_c4: dim S != t + 1");
  std::vector<Subspace> members;
  symplectic::for_each_isotropic(space, m2, cap, [&](const Subspace& F) {
    if (intersection_dim(space.field, F, S) >= t) members.push_back(F);
    return true;
  });
  return Family{m2, std::move(members)};
}

Family build_trivial(const SymplecticSpace& space, const Subspace& T,
                     std::uint32_t m, std::uint64_t cap) {
  require_isotropic(space, T, "build_trivial: T is not totally isotropic");
  if (T.rank > m) throw DomainError("build_trivial: dim T > m");
  return Family{m, enumerate_isotropic_containing(space, T, m, cap)};
}

CrossCheck cross_t_check(const SymplecticSpace& space, const CrossPair& pair) {
  for (const auto& a : pair.f1.members) {
    for (const auto& b : pair.f2.members) {
      const std::uint32_t d = intersection_dim(space.field, a, b);
      if (d < pair.t) return CrossCheck{false, std::make_pair(a, b), d};
    }
  }
  return CrossCheck{};
}

TrivialityCheck is_trivial_pair(const SymplecticSpace& space,
                                const CrossPair& pair) {
  if (pair.f1.empty() || pair.f2.empty())
    throw DomainError("is_trivial_pair: empty family");
  const Family& small_side = pair.f2.m <= pair.f1.m ? pair.f2 : pair.f1;
  const auto candidates =
      subspaces_within(space, small_side.members.front(), pair.t);
  for (const auto& core : candidates) {
    auto in_all = [&](const Family& fam) {
      return std::all_of(fam.members.begin(), fam.members.end(),
                         [&](const Subspace& f) {
                           return contains(space.field, f, core);
                         });
    };
    if (in_all(pair.f1) && in_all(pair.f2))
      return TrivialityCheck{true, core};
  }
  return TrivialityCheck{};
}

CoverReport tau(const SymplecticSpace& space, const Family& family,
                std::uint32_t t, std::uint64_t cap) {
  if (family.empty()) throw DomainError("tau: empty family");
  for (std::uint32_t x = t; x <= space.nu; ++x) {
    std::vector<Subspace> witnesses;
    symplectic::for_each_isotropic(space, x, cap, [&](const Subspace& cover) {
      for (const auto& f : family.members)
        if (intersection_dim(space.field, cover, f) < t) return true;
      witnesses.push_back(cover);
      return true;
    });
    if (!witnesses.empty()) return CoverReport{x, std::move(witnesses)};
  }
  throw DomainError("tau: family has no totally isotropic t-cover");
}

Family closure_over(const SymplecticSpace& space, const Family& family,
                    const std::vector<Subspace>& universe, std::uint32_t t) {
  std::vector<Subspace> members;
  for (const auto& g : universe) {
    bool compatible = true;
    for (const auto& f : family.members) {
      if (intersection_dim(space.field, g, f) < t) {
        compatible = false;
        break;
      }
    }
    if (compatible) members.push_back(g);
  }
  const std::uint32_t m = universe.empty() ? 0 : universe.front().rank;
  return Family{m, std::move(members)};
}

Family closure(const SymplecticSpace& space, const Family& family,
               std::uint32_t m_other, std::uint32_t t, std::uint64_t cap) {
  std::vector<Subspace> members;
  symplectic::for_each_isotropic(space, m_other, cap, [&](const Subspace& g) {
    for (const auto& f : family.members)
      if (intersection_dim(space.field, g, f) < t) return true;
    members.push_back(g);
    return true;
  });
  return Family{m_other, std::move(members)};
}

bool is_maximal_pair(const SymplecticSpace& space, const CrossPair& pair,
                     std::uint64_t cap) {
  return closure(space, pair.f1, pair.f2.m, pair.t, cap) == pair.f2 &&
         closure(space, pair.f2, pair.f1.m, pair.t, cap) == pair.f1;
}

}  // namespace polarx::families
