// Dense linear algebra over a small prime field F_p.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace schur::linalg {

using Vec = std::vector<int>;

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> a;  // row major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), 0) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);

  int& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  int operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
  Vec row(int i) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix&, const Matrix&) = default;
};

int mod(long long x, int p);
int inv_mod(int a, int p);

Matrix mul(const Matrix& x, const Matrix& y, int p);
Vec mul(const Matrix& m, const Vec& v, int p);
/// Row vector times matrix.
Vec mul(const Vec& v, const Matrix& m, int p);

/// Reduced row echelon form in place; returns pivot columns.  Zero rows are
/// dropped so the result has rank many rows.
std::vector<int> rref(Matrix& m, int p);
int rank(Matrix m, int p);
std::optional<Matrix> inverse(const Matrix& m, int p);

/// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Matrix& m, int p);

/// Affine solution set of m x = b.
struct AffineSolutions {
  Vec particular;
  std::vector<Vec> directions;
};
std::optional<AffineSolutions> solve(const Matrix& m, const Vec& b, int p);

/// Visit every k-dimensional subspace of F_p^n as an RREF k x n matrix, in
/// lexicographic order of (pivot set, free entries).  Return false from the
/// visitor to stop early.
void for_each_subspace(int n, int k, int p, const std::function<bool(const Matrix&)>& visit);

/// Gaussian binomial coefficient [n choose k]_p.
long long gaussian_binomial(int n, int k, int p);

/// Visit every invertible n x n matrix over F_p.
/// Rows are chosen in turn, each ranging over nonzero vectors in
/// lexicographic order.  `fixed_rows` pins a prefix.  Returns false if the
/// visitor stopped the enumeration.
bool for_each_invertible(int n, int p, const std::function<bool(const Matrix&)>& visit,
                         const std::vector<std::vector<int>>& fixed_rows = {});

/// Number of invertible n x n matrices over F_p.
long long gl_order(int n, int p);

}  // namespace schur::linalg
