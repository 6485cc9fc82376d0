#pragma once

// Dense square matrices over exact scalars (SpinMatrix) and small integers
// (IntMatrix, used for 0/1 relation matrices and their products).

#include <array>
#include <cassert>
#include <string>
#include <vector>

#include "spinkit/scalar.hpp"

namespace spinkit {

// Vertex coordinates of a 4k-point model: (alpha_1, alpha_2) in {0,1}^2
// selects the block, x in 0..k-1 the position inside it.  Linear index
// (2*alpha_1 + alpha_2)*k + x.
struct Index4k {
  int a1 = 0;
  int a2 = 0;
  int x = 0;

  static Index4k from_linear(int idx, int k) {
    assert(k > 0 && idx >= 0 && idx < 4 * k);
    int b = idx / k;
    return Index4k{b >> 1, b & 1, idx % k};
  }
  int linear(int k) const { return (2 * a1 + a2) * k + x; }
  bool operator==(const Index4k& o) const = default;
};

template <class T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int n, T fill = T())
      : n_(n), e_(static_cast<size_t>(n) * static_cast<size_t>(n), fill) {
    if (n < 0) throw Error(ErrKind::ShapeMismatch, "negative matrix side");
  }

  int side() const { return n_; }
  T& at(int r, int c) {
    assert(r >= 0 && r < n_ && c >= 0 && c < n_);
    return e_[static_cast<size_t>(r) * n_ + c];
  }
  const T& at(int r, int c) const {
    assert(r >= 0 && r < n_ && c >= 0 && c < n_);
    return e_[static_cast<size_t>(r) * n_ + c];
  }

  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  // labels are metadata; equality is entry-wise
  bool operator==(const Grid& o) const { return n_ == o.n_ && e_ == o.e_; }

 private:
  int n_ = 0;
  std::vector<T> e_;
  std::string label_;
};

using SpinMatrix = Grid<Scalar>;
using IntMatrix = Grid<long long>;
using ColumnVector = std::vector<Scalar>;

template <class T>
Grid<T> matmul(const Grid<T>& a, const Grid<T>& b) {
  if (a.side() != b.side())
    throw Error(ErrKind::ShapeMismatch, "matmul of different sides");
  int n = a.side();
  Grid<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      const T& ail = a.at(i, l);
      if (ail == T()) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += ail * b.at(l, j);
    }
  return r;
}

template <class T>
Grid<T> transpose(const Grid<T>& a) {
  int n = a.side();
  Grid<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

template <class T>
Grid<T> add(const Grid<T>& a, const Grid<T>& b) {
  if (a.side() != b.side())
    throw Error(ErrKind::ShapeMismatch, "sum of different sides");
  int n = a.side();
  Grid<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

// Assemble a 4x4 grid of equally sized square blocks (row-major order).
template <class T>
Grid<T> block4(const std::array<Grid<T>, 16>& blocks) {
  int k = blocks[0].side();
  for (const auto& b : blocks)
    if (b.side() != k)
      throw Error(ErrKind::ShapeMismatch, "block sizes differ");
  Grid<T> r(4 * k);
  for (int br = 0; br < 4; ++br)
    for (int bc = 0; bc < 4; ++bc) {
      const Grid<T>& b = blocks[static_cast<size_t>(4 * br + bc)];
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) r.at(br * k + i, bc * k + j) = b.at(i, j);
    }
  return r;
}

SpinMatrix conj_transpose(const SpinMatrix& a);
SpinMatrix scalar_mul(const Scalar& c, const SpinMatrix& a);

// sum_i coeffs[i] * mats[i]
SpinMatrix lincomb(const std::vector<Scalar>& coeffs,
                   const std::vector<const SpinMatrix*>& mats);

SpinMatrix embed_int_matrix(const IntMatrix& a, const ScalarContext& ctx);

IntMatrix int_identity(int n);
IntMatrix int_ones(int n);

ColumnVector matrix_row(const SpinMatrix& a, int r);
ColumnVector matrix_col(const SpinMatrix& a, int c);

// sum_i a_i * conj(b_i)
Scalar hermitian_ip(const ColumnVector& a, const ColumnVector& b);

// Entry-wise semantic comparison: Zero means equal, NonZero means a witness
// entry differs, Ambiguous means some difference is undecidable (and none is
// definitely nonzero).
struct MatrixCompare {
  ZeroStatus status = ZeroStatus::Zero;
  int row = -1;
  int col = -1;
};
MatrixCompare compare_matrices(const SpinMatrix& a, const SpinMatrix& b,
                               const ScalarContext& ctx);

// JSON dump: {"label": str (when set), "n": side, "rows": [[scalar text]]}.
// Round trips bit-exactly through parse_matrix for exact backends.
std::string dump_matrix(const SpinMatrix& a, const ScalarContext& ctx);
SpinMatrix parse_matrix(const std::string& text, const ScalarContext& ctx);

}  // namespace spinkit
