#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "polarx/gf.hpp"

namespace polarx::linalg {

using gf::FieldSpec;
using gf::Scalar;

/// Dense row-major matrix over a finite field.
struct Mat {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<Scalar> a;

  Mat() = default;
  Mat(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(r * c, 0) {}

  Scalar& at(std::uint32_t r, std::uint32_t c) { return a[r * cols + c]; }
  Scalar at(std::uint32_t r, std::uint32_t c) const { return a[r * cols + c]; }
  Scalar* row(std::uint32_t r) { return a.data() + r * cols; }
  const Scalar* row(std::uint32_t r) const { return a.data() + r * cols; }
};

/// In-place reduced row echelon form; returns the rank. Rows beyond the
/// rank are zeroed.
std::uint32_t rref_in_place(const FieldSpec& f, Mat& m);

/// Pivot columns of a matrix already in RREF.
std::vector<std::uint32_t> rref_pivots(const Mat& m, std::uint32_t rank);

/// Basis of the null space {x : m x^T = 0}, in RREF with rows sorted by
/// pivot column.
Mat kernel(const FieldSpec& f, const Mat& m);

/// Reduce v against an RREF matrix; returns true when v lies in its row
/// space (v is modified to the residual).
bool reduce_against(const FieldSpec& f, const Mat& rref, std::uint32_t rank,
                    std::vector<Scalar>& v);

/// Enumerate every rank x cols matrix in RREF over f, in lexicographic
/// order of (pivot columns, entry list). The callback returns false to
/// stop early; so does the function.
bool for_each_rref(const FieldSpec& f, std::uint32_t rank, std::uint32_t cols,
                   const std::function<bool(const Mat&)>& fn);

}  // namespace polarx::linalg
