#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "reclab/rational.hpp"

namespace reclab::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, rows of equal length

struct Echelon {
  Matrix rows;                      // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Gauss-Jordan elimination over the rationals.
Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}; `cols` gives the width when m has no rows.
Matrix nullspace(const Matrix& m, std::size_t cols);
/// Some solution of m x = b (free variables set to 0), or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Canonical key of the row space of `vectors` (its reduced echelon form).
Matrix span_basis(const Matrix& vectors);
std::size_t span_dimension(const Matrix& vectors);
/// True when every vector of `a` lies in span(b).
bool span_contains(const Matrix& b, const Matrix& a);

}  // namespace reclab::linalg
