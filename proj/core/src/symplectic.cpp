#include "polarx/symplectic.hpp"

#include <algorithm>

#include "polarx/errors.hpp"
#include "polarx/qarith.hpp"

namespace polarx::symplectic {

SymplecticSpace make_space(std::int64_t nu, std::int64_t q) {
  if (nu < 1) throw ParameterError("make_space: nu must be >= 1");
  return SymplecticSpace{gf::field_from_order(q),
                         static_cast<std::uint32_t>(nu)};
}

linalg::Mat gram_matrix(const SymplecticSpace& space) {
  const std::uint32_t n = space.nu;
  linalg::Mat g(2 * n, 2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    g.at(i, n + i) = 1;
    g.at(n + i, i) = space.field.neg(1);
  }
  return g;
}

std::vector<std::uint32_t> Subspace::pivots() const {
  std::vector<std::uint32_t> piv;
  piv.reserve(rank);
  for (std::uint32_t r = 0; r < rank; ++r) {
    std::uint32_t c = 0;
    while (c < ambient && data[r * ambient + c] == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

bool subspace_less(const Subspace& a, const Subspace& b) {
  const auto pa = a.pivots(), pb = b.pivots();
  if (pa != pb) return pa < pb;
  return a.data < b.data;
}

Subspace zero_subspace(std::uint32_t ambient) {
  return Subspace{ambient, 0, {}};
}

Subspace canonicalize(const FieldSpec& f, linalg::Mat m) {
  const std::uint32_t rank = linalg::rref_in_place(f, m);
  Subspace s{m.cols, rank, {}};
  s.data.assign(m.a.begin(), m.a.begin() + static_cast<std::size_t>(rank) * m.cols);
  return s;
}

Subspace canonicalize(const FieldSpec& f, std::uint32_t ambient,
                      const std::vector<std::vector<Scalar>>& rows) {
  linalg::Mat m(static_cast<std::uint32_t>(rows.size()), ambient);
  for (std::uint32_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ambient)
      throw ParameterError("canonicalize: row length != ambient dimension");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r));
  }
  return canonicalize(f, std::move(m));
}

Scalar form_eval(const SymplecticSpace& space, std::span<const Scalar> u,
                 std::span<const Scalar> v) {
  const FieldSpec& f = space.field;
  const std::uint32_t n = space.nu;
  Scalar acc = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc = f.add(acc, f.mul(u[i], v[n + i]));
    acc = f.sub(acc, f.mul(u[n + i], v[i]));
  }
  return acc;
}

bool is_isotropic(const SymplecticSpace& space, const Subspace& s) {
  for (std::uint32_t i = 0; i < s.rank; ++i)
    for (std::uint32_t j = i + 1; j < s.rank; ++j)
      if (form_eval(space, s.row(i), s.row(j)) != 0) return false;
  return true;
}

SubspaceType subspace_type(const SymplecticSpace& space, const Subspace& s) {
  linalg::Mat g(s.rank, s.rank);
  for (std::uint32_t i = 0; i < s.rank; ++i)
    for (std::uint32_t j = 0; j < s.rank; ++j)
      g.at(i, j) = form_eval(space, s.row(i), s.row(j));
  const std::uint32_t r = linalg::rref_in_place(space.field, g);
  // The restricted Gram matrix of an alternating form has even rank.
  if (r % 2 != 0) throw DomainError("restricted Gram matrix has odd rank");
  return SubspaceType{s.rank, r / 2};
}

namespace {

struct IsotropicWalker {
  const SymplecticSpace& space;
  const std::uint32_t m;
  const std::uint32_t cols;
  const std::function<bool(const Subspace&)>& fn;
  linalg::Mat work;
  std::vector<std::vector<std::uint32_t>> row_free;  // free columns per row

  IsotropicWalker(const SymplecticSpace& s, std::uint32_t m_,
                  const std::function<bool(const Subspace&)>& f)
      : space(s), m(m_), cols(s.dim()), fn(f), work(m_, s.dim()) {}

  bool run() {
    std::vector<std::uint32_t> piv(m);
    for (std::uint32_t i = 0; i < m; ++i) piv[i] = i;
    while (true) {
      if (!run_pattern(piv)) return false;
      std::int32_t i = static_cast<std::int32_t>(m) - 1;
      while (i >= 0 && piv[i] == cols - m + i) --i;
      if (i < 0) return true;
      ++piv[i];
      for (std::uint32_t j = i + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
    }
  }

  bool run_pattern(const std::vector<std::uint32_t>& piv) {
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    row_free.assign(m, {});
    std::fill(work.a.begin(), work.a.end(), 0);
    for (std::uint32_t r = 0; r < m; ++r) {
      work.at(r, piv[r]) = 1;
      for (std::uint32_t c = piv[r] + 1; c < cols; ++c)
        if (!is_pivot[c]) row_free[r].push_back(c);
    }
    return descend(0);
  }

  // Enumerate assignments of row r's free entries in lexicographic order;
  // rows must pairwise annihilate under the form before descending.
  bool descend(std::uint32_t r) {
    if (r == m) {
      Subspace s{cols, m, work.a};
      return fn(s);
    }
    const auto& free_cols = row_free[r];
    for (auto c : free_cols) work.at(r, c) = 0;
    while (true) {
      if (row_compatible(r)) {
        if (!descend(r + 1)) return false;
      }
      bool carried = false;
      for (auto it = free_cols.rbegin(); it != free_cols.rend(); ++it) {
        Scalar& v = work.at(r, *it);
        if (v + 1 < space.field.q()) {
          ++v;
          carried = true;
          break;
        }
        v = 0;
      }
      if (!carried) return true;
    }
  }

  bool row_compatible(std::uint32_t r) const {
    const std::span<const Scalar> vr{work.row(r), cols};
    for (std::uint32_t j = 0; j < r; ++j)
      if (form_eval(space, {work.row(j), cols}, vr) != 0) return false;
    return true;
  }
};

}  // namespace

void for_each_isotropic(const SymplecticSpace& space, std::uint32_t m,
                        std::uint64_t cap,
                        const std::function<bool(const Subspace&)>& fn) {
  if (m > space.nu)
    throw ParameterError("for_each_isotropic: need m <= nu");
  const ExactInt predicted =
      qarith::polar_count(space.nu, m, space.field.q());
  if (predicted > cap)
    throw FeasibilityError("isotropic enumeration exceeds cap",
                           to_decimal(predicted), cap);
  if (m == 0) {
    fn(zero_subspace(space.dim()));
    return;
  }
  IsotropicWalker w(space, m, fn);
  w.run();
}

std::vector<Subspace> enumerate_isotropic(const SymplecticSpace& space,
                                          std::uint32_t m,
                                          std::uint64_t cap) {
  std::vector<Subspace> out;
  for_each_isotropic(space, m, cap, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::vector<Subspace> enumerate_isotropic_containing(
    const SymplecticSpace& space, const Subspace& a, std::uint32_t m,
    std::uint64_t cap) {
  if (!is_isotropic(space, a))
    throw DomainError("enumerate_isotropic_containing: a is not isotropic");
  if (a.rank > m)
    throw ParameterError("enumerate_isotropic_containing: need dim a <= m");
  std::vector<Subspace> out;
  for_each_isotropic(space, m, cap, [&](const Subspace& s) {
    if (contains(space.field, s, a)) out.push_back(s);
    return true;
  });
  return out;
}

std::vector<Subspace> subspaces_within(const SymplecticSpace& space,
                                       const Subspace& A, std::uint32_t a) {
  if (a > A.rank)
    throw ParameterError("subspaces_within: need a <= dim A");
  std::vector<Subspace> out;
  if (a == 0) {
    out.push_back(zero_subspace(space.dim()));
    return out;
  }
  const FieldSpec& f = space.field;
  linalg::for_each_rref(f, a, A.rank, [&](const linalg::Mat& coeff) {
    linalg::Mat rows(a, space.dim());
    for (std::uint32_t r = 0; r < a; ++r)
      for (std::uint32_t k = 0; k < A.rank; ++k) {
        const Scalar ck = coeff.at(r, k);
        if (ck == 0) continue;
        for (std::uint32_t c = 0; c < space.dim(); ++c)
          rows.at(r, c) =
              f.add(rows.at(r, c), f.mul(ck, A.data[k * A.ambient + c]));
      }
    Subspace s = canonicalize(f, std::move(rows));
    if (is_isotropic(space, s)) out.push_back(std::move(s));
    return true;
  });
  std::sort(out.begin(), out.end(), subspace_less);
  return out;
}

Subspace sum(const FieldSpec& f, const Subspace& a, const Subspace& b) {
  linalg::Mat m(a.rank + b.rank, a.ambient);
  std::copy(a.data.begin(), a.data.end(), m.a.begin());
  std::copy(b.data.begin(), b.data.end(),
            m.a.begin() + static_cast<std::size_t>(a.rank) * a.ambient);
  return canonicalize(f, std::move(m));
}

Subspace intersect(const FieldSpec& f, const Subspace& a, const Subspace& b) {
  // Zassenhaus: reduce [A | A; B | 0]; rows with zero left half carry a
  // basis of the intersection in the right half.
  const std::uint32_t n = a.ambient;
  linalg::Mat z(a.rank + b.rank, 2 * n);
  for (std::uint32_t r = 0; r < a.rank; ++r)
    for (std::uint32_t c = 0; c < n; ++c) {
      z.at(r, c) = a.data[r * n + c];
      z.at(r, n + c) = a.data[r * n + c];
    }
  for (std::uint32_t r = 0; r < b.rank; ++r)
    for (std::uint32_t c = 0; c < n; ++c) z.at(a.rank + r, c) = b.data[r * n + c];
  const std::uint32_t rank = linalg::rref_in_place(f, z);
  linalg::Mat inter(rank, n);
  std::uint32_t out = 0;
  for (std::uint32_t r = 0; r < rank; ++r) {
    bool left_zero = true;
    for (std::uint32_t c = 0; c < n && left_zero; ++c)
      if (z.at(r, c) != 0) left_zero = false;
    if (!left_zero) continue;
    for (std::uint32_t c = 0; c < n; ++c) inter.at(out, c) = z.at(r, n + c);
    ++out;
  }
  inter.rows = out;
  inter.a.resize(static_cast<std::size_t>(out) * n);
  return canonicalize(f, std::move(inter));
}

bool contains(const FieldSpec& f, const Subspace& a, const Subspace& b) {
  linalg::Mat am(a.rank, a.ambient);
  am.a = a.data;
  for (std::uint32_t r = 0; r < b.rank; ++r) {
    std::vector<Scalar> v(b.row(r).begin(), b.row(r).end());
    if (!linalg::reduce_against(f, am, a.rank, v)) return false;
  }
  return true;
}

std::uint32_t intersection_dim(const FieldSpec& f, const Subspace& a,
                               const Subspace& b) {
  // dim(A) + dim(B) - dim(A + B), via one elimination on stacked rows.
  linalg::Mat m(a.rank + b.rank, a.ambient);
  std::copy(a.data.begin(), a.data.end(), m.a.begin());
  std::copy(b.data.begin(), b.data.end(),
            m.a.begin() + static_cast<std::size_t>(a.rank) * a.ambient);
  const std::uint32_t sum_dim = linalg::rref_in_place(f, m);
  return a.rank + b.rank - sum_dim;
}

Subspace perp(const SymplecticSpace& space, const Subspace& a) {
  const std::uint32_t n = space.nu;
  const FieldSpec& f = space.field;
  // Row i holds j -> f(a_i, e_j): (-a_{nu..2nu-1} | a_{0..nu-1}).
  linalg::Mat m(a.rank, space.dim());
  for (std::uint32_t r = 0; r < a.rank; ++r)
    for (std::uint32_t j = 0; j < n; ++j) {
      m.at(r, j) = f.neg(a.data[r * a.ambient + n + j]);
      m.at(r, n + j) = a.data[r * a.ambient + j];
    }
  return canonicalize(f, linalg::kernel(f, m));
}

LinearOps linear_ops(const SymplecticSpace& space, const Subspace& a,
                     const Subspace& b) {
  return LinearOps{intersect(space.field, a, b), sum(space.field, a, b),
                   contains(space.field, a, b), perp(space, a)};
}

}  // namespace polarx::symplectic
