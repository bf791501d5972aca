#include "reclab/linalg.hpp"

#include "reclab/error.hpp"

namespace reclab::linalg {

Echelon rref(Matrix m) {
  Echelon e;
  if (m.empty()) return e;
  const std::size_t cols = m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols) throw Error(ErrorCode::ShapeMismatch, "ragged matrix");
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const Rational inv = Rational(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(const Matrix& m) { return rref(m).rows.size(); }

Matrix nullspace(const Matrix& m, std::size_t cols) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = Rational(1);
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (m.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length differs from row count");
  if (m.empty()) return Vector{};
  const std::size_t cols = m.front().size();
  Matrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const Echelon e = rref(std::move(aug));
  Vector x(cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == cols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][cols];
  }
  return x;
}

Matrix span_basis(const Matrix& vectors) { return rref(vectors).rows; }

std::size_t span_dimension(const Matrix& vectors) { return rank(vectors); }

bool span_contains(const Matrix& b, const Matrix& a) {
  if (a.empty()) return true;
  Matrix both = b;
  both.insert(both.end(), a.begin(), a.end());
  return rank(both) == rank(b);
}

}  // namespace reclab::linalg
