#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/marked_diagram.hpp"
#include "mdiag/prime_field.hpp"
#include "mdiag/root_system.hpp"

namespace mdiag {

/// Square matrix over F_p, row-major, entries reduced into [0, p).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int n, fp::Elem p) : n_(n), p_(p), a_(static_cast<std::size_t>(n * n), 0) {}

  static Matrix identity(int n, fp::Elem p) {
    Matrix m(n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  /// Builds from integer rows, reducing mod p.
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, fp::Elem p) {
    const int n = static_cast<int>(rows.size());
    Matrix m(n, p);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) throw InvalidArgument("matrix rows must form a square");
      for (int j = 0; j < n; ++j) m.set(i, j, fp::reduce(rows[i][j], p));
    }
    return m;
  }

  /// I + x E_{i,j}.
  static Matrix elementary(int n, fp::Elem p, int i, int j, fp::Elem x) {
    Matrix m = identity(n, p);
    m.set(i, j, fp::add(m(i, j), x % p, p));
    return m;
  }

  int n() const { return n_; }
  fp::Elem p() const { return p_; }
  fp::Elem operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  void set(int i, int j, fp::Elem v) { a_[static_cast<std::size_t>(i * n_ + j)] = v % p_; }
  const std::vector<fp::Elem>& data() const { return a_; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.n_ != y.n_ || x.p_ != y.p_) throw InvalidArgument("matrix shapes or fields differ");
    Matrix z(x.n_, x.p_);
    for (int i = 0; i < x.n_; ++i) {
      for (int k = 0; k < x.n_; ++k) {
        const std::uint64_t xik = x(i, k);
        if (xik == 0) continue;
        for (int j = 0; j < x.n_; ++j) {
          auto& dst = z.a_[static_cast<std::size_t>(i * x.n_ + j)];
          dst = static_cast<fp::Elem>((dst + xik * y(k, j)) % x.p_);
        }
      }
    }
    return z;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) { return x.n_ == y.n_ && x.p_ == y.p_ && x.a_ == y.a_; }

  bool is_upper_triangular() const {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < i; ++j) {
        if ((*this)(i, j) != 0) return false;
      }
    }
    return true;
  }

  bool is_diagonal() const {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i != j && (*this)(i, j) != 0) return false;
      }
    }
    return true;
  }

  bool is_unipotent_upper() const {
    if (!is_upper_triangular()) return false;
    for (int i = 0; i < n_; ++i) {
      if ((*this)(i, i) != 1) return false;
    }
    return true;
  }

  fp::Elem det() const {
    Matrix m = *this;
    fp::Elem d = 1;
    for (int c = 0; c < n_; ++c) {
      int piv = c;
      while (piv < n_ && m(piv, c) == 0) ++piv;
      if (piv == n_) return 0;
      if (piv != c) {
        m.swap_rows(piv, c);
        d = fp::neg(d, p_);
      }
      d = fp::mul(d, m(c, c), p_);
      const fp::Elem inv = fp::inv(m(c, c), p_);
      for (int r = c + 1; r < n_; ++r) {
        const fp::Elem f = fp::mul(m(r, c), inv, p_);
        if (f == 0) continue;
        for (int k = c; k < n_; ++k) m.set(r, k, fp::sub(m(r, k), fp::mul(f, m(c, k), p_), p_));
      }
    }
    return d;
  }

  int rank() const {
    Matrix m = *this;
    int r = 0;
    for (int c = 0; c < n_ && r < n_; ++c) {
      int piv = r;
      while (piv < n_ && m(piv, c) == 0) ++piv;
      if (piv == n_) continue;
      m.swap_rows(piv, r);
      const fp::Elem inv = fp::inv(m(r, c), p_);
      for (int i = 0; i < n_; ++i) {
        if (i == r || m(i, c) == 0) continue;
        const fp::Elem f = fp::mul(m(i, c), inv, p_);
        for (int k = c; k < n_; ++k) m.set(i, k, fp::sub(m(i, k), fp::mul(f, m(r, k), p_), p_));
      }
      ++r;
    }
    return r;
  }

  Matrix inverse() const {
    Matrix m = *this;
    Matrix out = identity(n_, p_);
    for (int c = 0; c < n_; ++c) {
      int piv = c;
      while (piv < n_ && m(piv, c) == 0) ++piv;
      if (piv == n_) throw InvalidArgument("matrix is singular");
      m.swap_rows(piv, c);
      out.swap_rows(piv, c);
      const fp::Elem inv = fp::inv(m(c, c), p_);
      for (int k = 0; k < n_; ++k) {
        m.set(c, k, fp::mul(m(c, k), inv, p_));
        out.set(c, k, fp::mul(out(c, k), inv, p_));
      }
      for (int r = 0; r < n_; ++r) {
        if (r == c || m(r, c) == 0) continue;
        const fp::Elem f = m(r, c);
        for (int k = 0; k < n_; ++k) {
          m.set(r, k, fp::sub(m(r, k), fp::mul(f, m(c, k), p_), p_));
          out.set(r, k, fp::sub(out(r, k), fp::mul(f, out(c, k), p_), p_));
        }
      }
    }
    return out;
  }

  /// Characteristic polynomial det(xI - M) via Hessenberg reduction.
  fp::Poly charpoly() const {
    Matrix h = *this;
    const fp::Elem p = p_;
    for (int m = 1; m + 1 < n_; ++m) {
      int piv = m;
      while (piv < n_ && h(piv, m - 1) == 0) ++piv;
      if (piv == n_) continue;
      if (piv != m) {
        h.swap_rows(piv, m);
        h.swap_cols(piv, m);
      }
      const fp::Elem inv = fp::inv(h(m, m - 1), p);
      for (int i = m + 1; i < n_; ++i) {
        const fp::Elem u = fp::mul(h(i, m - 1), inv, p);
        if (u == 0) continue;
        for (int k = 0; k < n_; ++k) h.set(i, k, fp::sub(h(i, k), fp::mul(u, h(m, k), p), p));
        for (int k = 0; k < n_; ++k) h.set(k, m, fp::add(h(k, m), fp::mul(u, h(k, i), p), p));
      }
    }
    std::vector<fp::Poly> c(static_cast<std::size_t>(n_ + 1));
    c[0] = {1};
    for (int k = 1; k <= n_; ++k) {
      fp::Poly next(static_cast<std::size_t>(k + 1), 0);
      const auto& prev = c[static_cast<std::size_t>(k - 1)];
      for (std::size_t d = 0; d < prev.size(); ++d) {
        next[d + 1] = fp::add(next[d + 1], prev[d], p);
        next[d] = fp::sub(next[d], fp::mul(h(k - 1, k - 1), prev[d], p), p);
      }
      fp::Elem t = 1;
      for (int i = 1; i < k; ++i) {
        t = fp::mul(t, h(k - i, k - i - 1), p);
        const fp::Elem f = fp::mul(t, h(k - i - 1, k - 1), p);
        if (f == 0) continue;
        const auto& q = c[static_cast<std::size_t>(k - i - 1)];
        for (std::size_t d = 0; d < q.size(); ++d) next[d] = fp::sub(next[d], fp::mul(f, q[d], p), p);
      }
      c[static_cast<std::size_t>(k)] = std::move(next);
    }
    auto out = c[static_cast<std::size_t>(n_)];
    fp::trim(out);
    return out;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  void swap_rows(int a, int b) {
    for (int k = 0; k < n_; ++k) std::swap(a_[static_cast<std::size_t>(a * n_ + k)], a_[static_cast<std::size_t>(b * n_ + k)]);
  }
  void swap_cols(int a, int b) {
    for (int k = 0; k < n_; ++k) std::swap(a_[static_cast<std::size_t>(k * n_ + a)], a_[static_cast<std::size_t>(k * n_ + b)]);
  }

  int n_ = 0;
  fp::Elem p_ = 2;
  std::vector<fp::Elem> a_;
};

/// Torus part, simple-root coordinates and the remaining positive-root
/// coordinates of an upper triangular element.
///
/// Positive roots e_i - e_j (i < j) are ordered by height j - i, then by i;
/// the element equals diag(torus) * prod u_{ij}(x_ij) in that order.
struct BorelCoordinates {
  std::vector<fp::Elem> torus;
  std::vector<fp::Elem> simple_coords;
  std::vector<fp::Elem> higher_coords;
};

/// Single-element toolkit for SL_n(F_p): no enumeration, so it is usable for
/// any n and p.
class SLContext {
 public:
  SLContext(int n, fp::Elem p) : n_(n), p_(p) {
    if (n < 2) throw InvalidArgument("SL_n needs n >= 2");
    if (n > 32) throw InvalidArgument("SL_n lab supports n <= 32");
    fp::require_prime(p);
    system_ = build_root_system(RootType::A, n - 1);
  }

  int n() const { return n_; }
  fp::Elem p() const { return p_; }
  const RootSystemPtr& system() const { return system_; }

  Matrix identity() const { return Matrix::identity(n_, p_); }

  Matrix matrix(const std::vector<std::vector<std::int64_t>>& rows) const {
    Matrix m = Matrix::from_rows(rows, p_);
    if (m.n() != n_) throw InvalidArgument("expected a " + std::to_string(n_) + "x" + std::to_string(n_) + " matrix");
    return m;
  }

  bool in_group(const Matrix& g) const { return g.n() == n_ && g.p() == p_ && g.det() == 1; }
  bool in_borel(const Matrix& g) const { return in_group(g) && g.is_upper_triangular(); }
  bool in_torus(const Matrix& g) const { return in_group(g) && g.is_diagonal(); }
  bool in_unipotent(const Matrix& g) const { return g.n() == n_ && g.is_unipotent_upper(); }

  /// Antidiagonal representative of the longest Weyl element, entry (i, n-1-i)
  /// equal to (-1)^i. The signs multiply to the sign of the reversal
  /// permutation, so the determinant is 1.
  Matrix w0() const {
    Matrix w(n_, p_);
    for (int i = 0; i < n_; ++i) w.set(i, n_ - 1 - i, (i % 2 == 0) ? 1 : fp::neg(1, p_));
    return w;
  }

  /// |SL_n(F_p)| = p^{n(n-1)/2} prod_{i=2}^{n} (p^i - 1), or nullopt when it
  /// exceeds 2^64.
  std::optional<std::uint64_t> group_order() const {
    unsigned __int128 order = 1;
    const unsigned __int128 cap = ~std::uint64_t{0};
    for (int k = 0; k < n_ * (n_ - 1) / 2; ++k) {
      order *= p_;
      if (order > cap) return std::nullopt;
    }
    unsigned __int128 pi = 1;
    for (int i = 1; i <= n_; ++i) {
      pi *= p_;
      if (pi > cap) return std::nullopt;
      if (i >= 2) {
        order *= (pi - 1);
        if (order > cap) return std::nullopt;
      }
    }
    return static_cast<std::uint64_t>(order);
  }

  /// Positive roots (i, j), i < j, in the factorization order.
  std::vector<std::pair<int, int>> positive_root_order() const {
    std::vector<std::pair<int, int>> out;
    for (int h = 1; h < n_; ++h) {
      for (int i = 0; i + h < n_; ++i) out.emplace_back(i, i + h);
    }
    return out;
  }

  BorelCoordinates borel_factorize(const Matrix& g) const {
    if (!in_borel(g)) throw InvalidArgument("element is not in the Borel subgroup: " + g.str());
    BorelCoordinates bc;
    Matrix t_inv(n_, p_);
    for (int i = 0; i < n_; ++i) {
      bc.torus.push_back(g(i, i));
      t_inv.set(i, i, fp::inv(g(i, i), p_));
    }
    const Matrix u = t_inv * g;
    Matrix q = identity();
    for (int h = 1; h < n_; ++h) {
      Matrix level = identity();
      for (int i = 0; i + h < n_; ++i) {
        const int j = i + h;
        const fp::Elem x = fp::sub(u(i, j), q(i, j), p_);
        (h == 1 ? bc.simple_coords : bc.higher_coords).push_back(x);
        level = level * Matrix::elementary(n_, p_, i, j, x);
      }
      q = q * level;
    }
    return bc;
  }

  Matrix reassemble(const BorelCoordinates& bc) const {
    const auto order = positive_root_order();
    if (bc.torus.size() != static_cast<std::size_t>(n_) ||
        bc.simple_coords.size() + bc.higher_coords.size() != order.size() ||
        bc.simple_coords.size() != static_cast<std::size_t>(n_ - 1)) {
      throw InvalidArgument("Borel coordinates have the wrong shape");
    }
    Matrix g(n_, p_);
    for (int i = 0; i < n_; ++i) g.set(i, i, bc.torus[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const fp::Elem x = k < bc.simple_coords.size() ? bc.simple_coords[k] : bc.higher_coords[k - bc.simple_coords.size()];
      g = g * Matrix::elementary(n_, p_, order[k].first, order[k].second, x);
    }
    return g;
  }

  /// Bitmask of simple roots with a non-zero coordinate; bit i is alpha_{i+1}.
  std::uint32_t diagram_mask(const Matrix& g) const {
    std::uint32_t m = 0;
    for (int i = 0; i + 1 < n_; ++i) {
      if (g(i, i + 1) != 0) m |= std::uint32_t{1} << i;
    }
    return m;
  }

  MarkedDiagram diagram_from_mask(std::uint32_t mask) const {
    std::vector<Coeff> c(static_cast<std::size_t>(n_ - 1));
    for (int i = 0; i + 1 < n_; ++i) c[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
    return MarkedDiagram(system_, std::move(c), DiagramMode::binary);
  }

  /// Marks alpha_i iff the projection on U_{alpha_i} is non-trivial, which for
  /// g in B is g[i][i+1] != 0.
  MarkedDiagram diagram_of(const Matrix& g) const {
    if (!in_borel(g)) throw InvalidArgument("diagram_of needs an element of B: " + g.str());
    return diagram_from_mask(diagram_mask(g));
  }

  /// u(D): product of u_alpha(1) over the marked simple roots, in order.
  Matrix u_of(const MarkedDiagram& d) const {
    Matrix u = identity();
    for (int i = 0; i + 1 < n_; ++i) {
      if (d[static_cast<std::size_t>(i)] != 0) u = u * Matrix::elementary(n_, p_, i, i + 1, 1);
    }
    return u;
  }

  /// Squarefree characteristic polynomial.
  bool is_regular_semisimple(const Matrix& g) const { return fp::is_squarefree(g.charpoly(), p_); }

  /// Unipotent element with a single Jordan block.
  bool is_regular_unipotent(const Matrix& u) const {
    Matrix nil = u;
    for (int i = 0; i < n_; ++i) nil.set(i, i, fp::sub(u(i, i), 1, p_));
    return nil.rank() == n_ - 1;
  }

  std::uint64_t order_of(const Matrix& g) const {
    const Matrix one = identity();
    Matrix cur = g;
    std::uint64_t k = 1;
    while (!(cur == one)) {
      cur = cur * g;
      ++k;
    }
    return k;
  }

  Matrix power(Matrix g, std::uint64_t e) const {
    Matrix r = identity();
    while (e) {
      if (e & 1) r = r * g;
      g = g * g;
      e >>= 1;
    }
    return r;
  }

  /// Multiplicative Jordan decomposition g = g_s g_u, with g_s the p'-part of g.
  std::pair<Matrix, Matrix> jordan_parts(const Matrix& g) const {
    const std::uint64_t order = order_of(g);
    std::uint64_t pa = 1;
    std::uint64_t b = order;
    while (b % p_ == 0) {
      b /= p_;
      pa *= p_;
    }
    // c = 0 mod pa, c = 1 mod b.
    std::uint64_t c = 0;
    while (c % b != 1 % b) c += pa;
    Matrix gs = power(g, c);
    Matrix gu = gs.inverse() * g;
    return {gs, gu};
  }

 private:
  int n_;
  fp::Elem p_;
  RootSystemPtr system_;
};

}  // namespace mdiag
