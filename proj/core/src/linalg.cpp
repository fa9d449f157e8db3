#include "schur/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace schur::linalg {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Vec Matrix::row(int i) const {
  return Vec(a.begin() + static_cast<std::ptrdiff_t>(i * cols), a.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

int mod(long long x, int p) {
  long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod(int a, int p) {
  a = mod(a, p);
  if (a == 0) throw std::domain_error("inverse of zero");
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

Matrix mul(const Matrix& x, const Matrix& y, int p) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      const int v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) = (z(i, j) + v * y(k, j)) % p;
    }
  }
  return z;
}

Vec mul(const Matrix& m, const Vec& v, int p) {
  Vec r(static_cast<std::size_t>(m.rows), 0);
  for (int i = 0; i < m.rows; ++i) {
    long long s = 0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = mod(s, p);
  }
  return r;
}

Vec mul(const Vec& v, const Matrix& m, int p) {
  Vec r(static_cast<std::size_t>(m.cols), 0);
  for (int j = 0; j < m.cols; ++j) {
    long long s = 0;
    for (int i = 0; i < m.rows; ++i) s += v[static_cast<std::size_t>(i)] * m(i, j);
    r[static_cast<std::size_t>(j)] = mod(s, p);
  }
  return r;
}

std::vector<int> rref(Matrix& m, int p) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    }
    const int s = inv_mod(m(r, c), p);
    for (int j = c; j < m.cols; ++j) m(r, j) = m(r, j) * s % p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const int f = p - m(i, c);
      for (int j = c; j < m.cols; ++j) m(i, j) = (m(i, j) + f * m(r, j)) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.a.resize(static_cast<std::size_t>(r * m.cols));
  return pivots;
}

int rank(Matrix m, int p) { return static_cast<int>(rref(m, p).size()); }

std::optional<Matrix> inverse(const Matrix& m, int p) {
  const int n = m.rows;
  if (m.cols != n) return std::nullopt;
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug, p);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  }
  return r;
}

std::vector<Vec> nullspace(const Matrix& m, int p) {
  Matrix r = m;
  const auto piv = rref(r, p);
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols), 0);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = 1;
  std::vector<Vec> basis;
  for (int f = 0; f < m.cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vec v(static_cast<std::size_t>(m.cols), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[static_cast<std::size_t>(piv[i])] = mod(-r(static_cast<int>(i), f), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<AffineSolutions> solve(const Matrix& m, const Vec& b, int p) {
  Matrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = mod(b[static_cast<std::size_t>(i)], p);
  }
  const auto piv = rref(aug, p);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  AffineSolutions s;
  s.particular.assign(static_cast<std::size_t>(m.cols), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    s.particular[static_cast<std::size_t>(piv[i])] = aug(static_cast<int>(i), m.cols);
  }
  s.directions = nullspace(m, p);
  return s;
}

namespace {

bool subspaces_with_pivots(int n, int k, int p, std::vector<int>& piv, int start,
                           const std::function<bool(const Matrix&)>& visit) {
  if (static_cast<int>(piv.size()) == k) {
    // free positions: row i, column c > piv[i] that is not a pivot column
    std::vector<std::pair<int, int>> free;
    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = 1;
    for (int i = 0; i < k; ++i) {
      for (int c = piv[static_cast<std::size_t>(i)] + 1; c < n; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) free.emplace_back(i, c);
      }
    }
    Matrix m(k, n);
    for (int i = 0; i < k; ++i) m(i, piv[static_cast<std::size_t>(i)]) = 1;
    std::vector<int> digits(free.size(), 0);
    while (true) {
      for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = digits[t];
      if (!visit(m)) return false;
      std::size_t t = free.size();
      while (t > 0) {
        --t;
        if (++digits[t] < p) break;
        digits[t] = 0;
        if (t == 0) return true;
      }
      if (free.empty()) return true;
    }
  }
  for (int c = start; c < n; ++c) {
    piv.push_back(c);
    const bool go = subspaces_with_pivots(n, k, p, piv, c + 1, visit);
    piv.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

void for_each_subspace(int n, int k, int p, const std::function<bool(const Matrix&)>& visit) {
  if (k < 0 || k > n) return;
  std::vector<int> piv;
  subspaces_with_pivots(n, k, p, piv, 0, visit);
}

long long gaussian_binomial(int n, int k, int p) {
  if (k < 0 || k > n) return 0;
  long long num = 1, den = 1;
  long long pn = 1, pk = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  for (int i = 0; i < k; ++i) {
    long long pi = 1;
    for (int t = 0; t < i; ++t) pi *= p;
    pk = 1;
    for (int t = 0; t < k; ++t) pk *= p;
    num *= pn / pi - 1;
    den *= pk / pi - 1;
  }
  return num / den;
}

namespace {

/// Rows chosen so far kept in echelon form alongside the matrix.
struct RowEchelon {
  int n, p;
  std::vector<std::vector<int>> rows;
  std::vector<int> pivots;

  bool independent(std::vector<int> v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int f = v[static_cast<std::size_t>(pivots[r])];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = mod(v[static_cast<std::size_t>(j)] - f * rows[r][static_cast<std::size_t>(j)], p);
    }
    return std::any_of(v.begin(), v.end(), [](int x) { return x != 0; });
  }
  void push(std::vector<int> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int f = v[static_cast<std::size_t>(pivots[r])];
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = mod(v[static_cast<std::size_t>(j)] - f * rows[r][static_cast<std::size_t>(j)], p);
    }
    int c = 0;
    while (v[static_cast<std::size_t>(c)] == 0) ++c;
    const int s = inv_mod(v[static_cast<std::size_t>(c)], p);
    for (auto& x : v) x = x * s % p;
    rows.push_back(std::move(v));
    pivots.push_back(c);
  }
  void pop() {
    rows.pop_back();
    pivots.pop_back();
  }
};

bool invertible_rows(Matrix& m, RowEchelon& ech, int row, int p, const std::function<bool(const Matrix&)>& visit) {
  const int n = m.cols;
  if (row == n) return visit(m);
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  while (true) {
    int pos = n - 1;
    while (pos >= 0 && ++v[static_cast<std::size_t>(pos)] == p) v[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return true;
    if (!ech.independent(v)) continue;
    for (int i = 0; i < n; ++i) m(row, i) = v[static_cast<std::size_t>(i)];
    ech.push(v);
    const bool go = invertible_rows(m, ech, row + 1, p, visit);
    ech.pop();
    if (!go) return false;
  }
}

}  // namespace

bool for_each_invertible(int n, int p, const std::function<bool(const Matrix&)>& visit,
                         const std::vector<std::vector<int>>& fixed_rows) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < fixed_rows.size(); ++r) {
    for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = mod(fixed_rows[r][static_cast<std::size_t>(c)], p);
  }
  RowEchelon ech{n, p, {}, {}};
  for (int r = 0; r < static_cast<int>(fixed_rows.size()); ++r) {
    const auto v = m.row(r);
    if (!ech.independent(v)) return true;
    ech.push(v);
  }
  return invertible_rows(m, ech, static_cast<int>(fixed_rows.size()), p, visit);
}

long long gl_order(int n, int p) {
  long long pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  long long r = 1, pi = 1;
  for (int i = 0; i < n; ++i) {
    r *= pn - pi;
    pi *= p;
  }
  return r;
}

}  // namespace schur::linalg
