#include <algorithm>
#include <stdexcept>

#include "cbpm/audit.hpp"

namespace cbpm::audit {

namespace {

struct Echelon {
  RationalMatrix rows;  // nonzero rows of the reduced row echelon form
  std::vector<int> pivots;
};

Echelon reduce(const IntMatrix& matrix, int columns) {
  RationalMatrix m;
  m.reserve(matrix.size());
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != columns) {
      throw std::invalid_argument("relation row has the wrong number of columns");
    }
    m.emplace_back(row.begin(), row.end());
  }
  Echelon out;
  std::size_t rank = 0;
  for (int col = 0; col < columns && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    const Rational lead = m[rank][col];
    for (auto& v : m[rank]) v /= lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (int c = 0; c < columns; ++c) m[r][c] -= factor * m[rank][c];
    }
    out.pivots.push_back(col);
    ++rank;
  }
  m.resize(rank);
  out.rows = std::move(m);
  return out;
}

// Solves the square system A x = rhs, A nonsingular.
std::vector<Rational> solve_square(RationalMatrix a, std::vector<Rational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("Gram matrix of a row basis is singular");
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= a[i][i];
  return rhs;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace

Projection project_onto_null_space(const IntMatrix& matrix,
                                   std::span<const Rational> b, int columns) {
  if (static_cast<int>(b.size()) != columns) {
    throw std::invalid_argument("vector length does not match column count");
  }
  const Echelon ech = reduce(matrix, columns);
  Projection out;
  out.rank = static_cast<int>(ech.rows.size());

  // a = b - Rᵀ λ with (R Rᵀ) λ = R b, R a basis of the row space.
  out.point.assign(b.begin(), b.end());
  if (!ech.rows.empty()) {
    const std::size_t r = ech.rows.size();
    RationalMatrix gram(r, std::vector<Rational>(r));
    std::vector<Rational> rb(r);
    for (std::size_t i = 0; i < r; ++i) {
      rb[i] = dot(ech.rows[i], b);
      for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(ech.rows[i], ech.rows[j]);
    }
    const auto lambda = solve_square(std::move(gram), std::move(rb));
    for (std::size_t i = 0; i < r; ++i) {
      for (int c = 0; c < columns; ++c) out.point[c] -= lambda[i] * ech.rows[i][c];
    }
  }

  // Null-space basis from the free columns of the echelon form.
  std::vector<bool> is_pivot(static_cast<std::size_t>(columns), false);
  for (int p : ech.pivots) is_pivot[p] = true;
  for (int free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> z(static_cast<std::size_t>(columns), Rational(0));
    z[free] = 1;
    for (std::size_t i = 0; i < ech.rows.size(); ++i) z[ech.pivots[i]] = -ech.rows[i][free];
    out.null_basis.push_back(std::move(z));
  }
  return out;
}

bool in_null_space(const IntMatrix& matrix, std::span<const Rational> a) {
  for (const auto& row : matrix) {
    Rational sum = 0;
    for (std::size_t c = 0; c < row.size(); ++c) sum += row[c] * a[c];
    if (sum != 0) return false;
  }
  return true;
}

bool normal_residual_zero(const RationalMatrix& null_basis,
                          std::span<const Rational> b,
                          std::span<const Rational> a) {
  std::vector<Rational> diff(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) diff[i] = b[i] - a[i];
  return std::all_of(null_basis.begin(), null_basis.end(),
                     [&](const auto& z) { return dot(z, diff) == 0; });
}

LevelSystem solve_levels(const ColourGrouping& grouping,
                         const PairClassification& classification,
                         const ColourHistogram& hist) {
  (void)hist;
  LevelSystem out;
  const int t = grouping.t();

  for (const auto& [p, q] : classification.generators) {
    std::vector<int> row(static_cast<std::size_t>(t), 0);
    ++row[p / t];
    ++row[p % t];
    --row[q / t];
    --row[q % t];
    const auto lead = std::find_if(row.begin(), row.end(), [](int v) { return v != 0; });
    if (lead == row.end()) continue;  // e.g. (i,j) ~ (j,i)
    if (*lead < 0) {
      for (auto& v : row) v = -v;
    }
    if (std::find(out.matrix.begin(), out.matrix.end(), row) != out.matrix.end()) continue;
    out.matrix.push_back(std::move(row));
    out.row_pairs.emplace_back(p, q);
  }

  out.b.assign(grouping.group_min.begin(), grouping.group_min.end());
  for (const auto& row : out.matrix) {
    BigInt sum = 0;
    for (int c = 0; c < t; ++c) sum += row[c] * out.b[c];
    out.residual.push_back(sum);
  }

  std::vector<Rational> b(out.b.begin(), out.b.end());
  Projection proj = project_onto_null_space(out.matrix, b, t);
  out.a = std::move(proj.point);
  out.null_basis = std::move(proj.null_basis);
  out.rank = proj.rank;

  out.max_deviation = 0;
  for (int i = 0; i < t; ++i) {
    out.max_deviation = std::max(out.max_deviation, Rational(abs(out.a[i] - b[i])));
  }
  out.null_residual_zero = in_null_space(out.matrix, out.a);
  out.normal_residual_zero = normal_residual_zero(out.null_basis, b, out.a);
  out.strictly_decreasing = true;
  for (int i = 0; i + 1 < t; ++i) {
    out.strictly_decreasing = out.strictly_decreasing && out.a[i] > out.a[i + 1];
  }

  out.class_sums_constant = true;
  std::vector<Rational> class_sum;
  for (const auto& cls : classification.classes) {
    const int first = cls.front();
    const Rational sum = out.a[first / t] + out.a[first % t];
    for (int p : cls) {
      out.class_sums_constant = out.class_sums_constant && out.a[p / t] + out.a[p % t] == sum;
    }
    class_sum.push_back(sum);
  }
  out.class_sums_weakly_decreasing = out.class_sums_constant;
  out.class_sums_strictly_decreasing = out.class_sums_constant;
  for (std::size_t q = 0; q + 1 < class_sum.size(); ++q) {
    out.class_sums_weakly_decreasing =
        out.class_sums_weakly_decreasing && class_sum[q] >= class_sum[q + 1];
    out.class_sums_strictly_decreasing =
        out.class_sums_strictly_decreasing && class_sum[q] > class_sum[q + 1];
  }
  return out;
}

}  // namespace cbpm::audit
