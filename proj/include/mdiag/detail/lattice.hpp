#pragma once

// Exact integer/rational linear algebra on short coefficient vectors. Sizes
// here are bounded by the rank of a root system (at most a few dozen), so
// everything is dense and naive.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace mdiag::detail {

using IntVec = std::vector<std::int64_t>;

/// Sublattice of Z^n spanned by a finite set of integer vectors, kept in row
/// echelon form obtained with unimodular row operations.
class IntLattice {
 public:
  IntLattice(std::vector<IntVec> generators, std::size_t dim) : dim_(dim) {
    rows_ = std::move(generators);
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < dim_ && pivot_row < rows_.size(); ++col) {
      for (;;) {
        // Smallest non-zero |entry| at or below pivot_row goes on top.
        std::size_t best = rows_.size();
        for (std::size_t i = pivot_row; i < rows_.size(); ++i) {
          if (rows_[i][col] != 0 &&
              (best == rows_.size() || std::llabs(rows_[i][col]) < std::llabs(rows_[best][col]))) {
            best = i;
          }
        }
        if (best == rows_.size()) break;
        std::swap(rows_[pivot_row], rows_[best]);
        bool done = true;
        for (std::size_t i = pivot_row + 1; i < rows_.size(); ++i) {
          if (rows_[i][col] == 0) continue;
          const std::int64_t q = rows_[i][col] / rows_[pivot_row][col];
          for (std::size_t k = 0; k < dim_; ++k) rows_[i][k] -= q * rows_[pivot_row][k];
          if (rows_[i][col] != 0) done = false;
        }
        if (done) break;
      }
      if (rows_[pivot_row][col] != 0) {
        if (rows_[pivot_row][col] < 0) {
          for (auto& x : rows_[pivot_row]) x = -x;
        }
        pivots_.push_back(col);
        ++pivot_row;
      }
    }
    rows_.resize(pivot_row);
  }

  std::size_t rank() const { return rows_.size(); }

  bool contains(IntVec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t col = pivots_[k];
      if (v[col] % rows_[k][col] != 0) return false;
      const std::int64_t q = v[col] / rows_[k][col];
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= q * rows_[k][j];
    }
    for (auto x : v) {
      if (x != 0) return false;
    }
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<IntVec> rows_;
  std::vector<std::size_t> pivots_;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  bool is_zero() const { return num == 0; }
};

/// Coordinates c with sum_k c_k * basis[k] == v, when v lies in the rational
/// span of `basis` (assumed linearly independent) and the coordinates are
/// integers. nullopt otherwise.
inline std::optional<IntVec> integer_coordinates(const std::vector<IntVec>& basis, const IntVec& v) {
  const std::size_t m = basis.size();
  const std::size_t n = v.size();
  // Augmented system: n equations, m unknowns.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) a[i][k] = Rational(basis[k][i]);
    a[i][m] = Rational(v[i]);
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;  // dependent basis
    std::swap(a[row], a[piv]);
    const Rational lead = a[row][col];
    for (auto& x : a[row]) x = x / lead;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      const Rational f = a[i][col];
      for (std::size_t k = 0; k <= m; ++k) a[i][k] = a[i][k] - f * a[row][k];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i) {
    if (!a[i][m].is_zero()) return std::nullopt;
  }
  IntVec out(m, 0);
  for (std::size_t k = 0; k < pivot_col.size(); ++k) {
    const Rational c = a[k][m];
    if (c.den != 1) return std::nullopt;
    out[pivot_col[k]] = c.num;
  }
  return out;
}

/// Rank over Q.
inline std::size_t rational_rank(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return 0;
  const std::size_t n = vectors.front().size();
  std::vector<std::vector<Rational>> a;
  for (const auto& v : vectors) {
    std::vector<Rational> row;
    for (auto x : v) row.emplace_back(x);
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][col].is_zero()) continue;
      const Rational f = a[i][col] / a[rank][col];
      for (std::size_t k = col; k < n; ++k) a[i][k] = a[i][k] - f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace mdiag::detail
