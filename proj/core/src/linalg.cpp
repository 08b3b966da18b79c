#include "polarx/linalg.hpp"

#include <algorithm>

namespace polarx::linalg {

std::uint32_t rref_in_place(const FieldSpec& f, Mat& m) {
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::uint32_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      std::swap_ranges(m.row(pivot), m.row(pivot) + m.cols, m.row(rank));
    const Scalar s = f.inv(m.at(rank, col));
    if (s != 1)
      for (std::uint32_t j = col; j < m.cols; ++j)
        m.at(rank, j) = f.mul(s, m.at(rank, j));
    for (std::uint32_t r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      const Scalar factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::uint32_t j = col; j < m.cols; ++j)
        m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  for (std::uint32_t r = rank; r < m.rows; ++r)
    std::fill(m.row(r), m.row(r) + m.cols, 0);
  return rank;
}

std::vector<std::uint32_t> rref_pivots(const Mat& m, std::uint32_t rank) {
  std::vector<std::uint32_t> piv;
  piv.reserve(rank);
  for (std::uint32_t r = 0; r < rank; ++r) {
    std::uint32_t c = 0;
    while (c < m.cols && m.at(r, c) == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

Mat kernel(const FieldSpec& f, const Mat& m) {
  Mat red = m;
  const std::uint32_t rank = rref_in_place(f, red);
  const auto piv = rref_pivots(red, rank);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : piv) is_pivot[c] = true;

  Mat basis(m.cols - rank, m.cols);
  std::uint32_t out = 0;
  for (std::uint32_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis.at(out, free_col) = 1;
    for (std::uint32_t r = 0; r < rank; ++r)
      basis.at(out, piv[r]) = f.neg(red.at(r, free_col));
    ++out;
  }
  rref_in_place(f, basis);  // canonical form
  return basis;
}

bool reduce_against(const FieldSpec& f, const Mat& rref, std::uint32_t rank,
                    std::vector<Scalar>& v) {
  for (std::uint32_t r = 0; r < rank; ++r) {
    std::uint32_t c = 0;
    while (c < rref.cols && rref.at(r, c) == 0) ++c;
    if (c == rref.cols || v[c] == 0) continue;
    const Scalar factor = v[c];
    for (std::uint32_t j = c; j < rref.cols; ++j)
      v[j] = f.sub(v[j], f.mul(factor, rref.at(r, j)));
  }
  return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

namespace {

// Odometer over the free entries of a fixed pivot pattern, row-major, each
// digit running 0..q-1: visits entry lists in lexicographic order.
struct PatternWalker {
  const FieldSpec& f;
  Mat m;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;

  PatternWalker(const FieldSpec& field, std::uint32_t rank,
                std::uint32_t cols, const std::vector<std::uint32_t>& piv)
      : f(field), m(rank, cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    for (std::uint32_t r = 0; r < rank; ++r) {
      m.at(r, piv[r]) = 1;
      for (std::uint32_t c = piv[r] + 1; c < cols; ++c)
        if (!is_pivot[c]) free_pos.emplace_back(r, c);
    }
  }

  bool advance() {  // next assignment; false when wrapped around
    for (auto it = free_pos.rbegin(); it != free_pos.rend(); ++it) {
      Scalar& v = m.at(it->first, it->second);
      if (v + 1 < f.q()) {
        ++v;
        return true;
      }
      v = 0;
    }
    return false;
  }
};

}  // namespace

bool for_each_rref(const FieldSpec& f, std::uint32_t rank, std::uint32_t cols,
                   const std::function<bool(const Mat&)>& fn) {
  if (rank == 0) {
    return fn(Mat(0, cols));
  }
  if (rank > cols) return true;
  // Pivot column combinations in lexicographic order.
  std::vector<std::uint32_t> piv(rank);
  for (std::uint32_t i = 0; i < rank; ++i) piv[i] = i;
  while (true) {
    PatternWalker w(f, rank, cols, piv);
    do {
      if (!fn(w.m)) return false;
    } while (w.advance());
    // next combination
    std::int32_t i = static_cast<std::int32_t>(rank) - 1;
    while (i >= 0 && piv[i] == cols - rank + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (std::uint32_t j = i + 1; j < rank; ++j) piv[j] = piv[j - 1] + 1;
  }
  return true;
}

}  // namespace polarx::linalg
