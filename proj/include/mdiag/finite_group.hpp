#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/sl_matrix.hpp"

namespace mdiag {

inline constexpr std::uint64_t kGroupOrderBudget = 1'000'000;

using ElementId = std::uint32_t;

/// Subset of an enumerated group, as a bitset over element ids.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

  bool contains(ElementId x) const { return x < universe_ && (bits_[x / 64] >> (x % 64) & 1U); }

  bool insert(ElementId x) {
    auto& w = bits_[x / 64];
    const std::uint64_t bit = std::uint64_t{1} << (x % 64);
    if (w & bit) return false;
    w |= bit;
    ++size_;
    return true;
  }

  std::size_t size() const { return size_; }
  std::size_t universe() const { return universe_; }
  bool empty() const { return size_ == 0; }

  std::vector<ElementId> members() const {
    std::vector<ElementId> out;
    out.reserve(size_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const int b = __builtin_ctzll(word);
        out.push_back(static_cast<ElementId>(w * 64 + static_cast<std::size_t>(b)));
        word &= word - 1;
      }
    }
    return out;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ && a.bits_ == b.bits_;
  }

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t universe_ = 0;
  std::size_t size_ = 0;
};

/// A conjugacy class with its marked-diagram data. Diagrams are stored as
/// bitmasks (bit i = alpha_{i+1}).
struct ConjClassRecord {
  ElementId representative = 0;
  std::vector<ElementId> members;
  std::set<std::uint32_t> diagram_set;
  bool is_central = false;
  bool is_U_regular = false;
  bool contains_regular_semisimple = false;
};

/// Fully enumerated SL_n(F_p) with B, T, U, U^- markers and conjugacy classes.
class FiniteGroupContext {
 public:
  FiniteGroupContext(int n, fp::Elem p) : sl_(n, p) {
    const auto order = sl_.group_order();
    if (!order || *order > kGroupOrderBudget) {
      throw BudgetExceeded("|SL_" + std::to_string(n) + "(F_" + std::to_string(p) + ")| = " +
                           (order ? std::to_string(*order) : std::string("> 2^64")) + " exceeds the budget of " +
                           std::to_string(kGroupOrderBudget));
    }
    enumerate(*order);
    compute_classes();
  }

  const SLContext& sl() const { return sl_; }
  int n() const { return sl_.n(); }
  fp::Elem p() const { return sl_.p(); }
  std::size_t order() const { return count_; }

  Matrix element(ElementId id) const {
    Matrix m(n(), p());
    const std::size_t nn = static_cast<std::size_t>(n() * n());
    for (std::size_t k = 0; k < nn; ++k) m.set(static_cast<int>(k) / n(), static_cast<int>(k) % n(), entries_[id * nn + k]);
    return m;
  }

  ElementId id_of(const Matrix& m) const {
    const auto c = code(m);
    if (!dense_.empty()) {
      if (c < dense_.size() && dense_[c] != kNone) return dense_[c];
    } else if (auto it = sparse_.find(c); it != sparse_.end()) {
      return it->second;
    }
    throw InvalidArgument("matrix is not in SL_" + std::to_string(n()) + "(F_" + std::to_string(p()) + "): " + m.str());
  }

  ElementId mul(ElementId a, ElementId b) const { return id_of(element(a) * element(b)); }
  ElementId inverse(ElementId a) const { return inverse_[a]; }
  ElementId identity() const { return id_of(sl_.identity()); }

  bool in_borel(ElementId g) const { return borel_.contains(g); }
  bool in_torus(ElementId g) const { return torus_.contains(g); }
  bool in_unipotent(ElementId g) const { return unipotent_.contains(g); }
  bool in_lower_unipotent(ElementId g) const { return lower_unipotent_.contains(g); }

  const ElementSet& borel() const { return borel_; }
  const ElementSet& torus() const { return torus_; }
  const ElementSet& unipotent() const { return unipotent_; }
  const ElementSet& lower_unipotent() const { return lower_unipotent_; }

  ElementId w0() const { return id_of(sl_.w0()); }

  const std::vector<ConjClassRecord>& classes() const { return classes_; }
  std::size_t class_of(ElementId g) const { return class_of_[g]; }

  ElementSet full_set() const {
    ElementSet s(count_);
    for (ElementId g = 0; g < count_; ++g) s.insert(g);
    return s;
  }

  ElementSet class_set(std::size_t c) const {
    ElementSet s(count_);
    for (auto g : classes_.at(c).members) s.insert(g);
    return s;
  }

  /// Classes meeting rep(a) * C_b. Since classes are normal, this is the set
  /// of classes in C_a * C_b.
  const std::vector<std::size_t>& class_product(std::size_t a, std::size_t b) const {
    auto& slot = class_products_[a * classes_.size() + b];
    if (!slot.computed) {
      std::vector<char> hit(classes_.size(), 0);
      const Matrix rep = element(classes_[a].representative);
      for (auto g : classes_[b].members) hit[class_of_[id_of(rep * element(g))]] = 1;
      for (std::size_t k = 0; k < hit.size(); ++k) {
        if (hit[k]) slot.classes.push_back(k);
      }
      slot.computed = true;
    }
    return slot.classes;
  }

  /// Classes contained in C_{c_1} ... C_{c_k}.
  std::vector<std::size_t> product_of_classes(const std::vector<std::size_t>& cs) const {
    if (cs.empty()) return {class_of(identity())};
    std::vector<char> acc(classes_.size(), 0);
    acc[cs.front()] = 1;
    for (std::size_t i = 1; i < cs.size(); ++i) {
      std::vector<char> next(classes_.size(), 0);
      for (std::size_t a = 0; a < acc.size(); ++a) {
        if (!acc[a]) continue;
        for (auto k : class_product(a, cs[i])) next[k] = 1;
      }
      acc = std::move(next);
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (acc[k]) out.push_back(k);
    }
    return out;
  }

 private:
  static constexpr ElementId kNone = ~ElementId{0};
  static constexpr std::uint64_t kDenseCodeLimit = std::uint64_t{1} << 24;

  std::uint64_t code(const Matrix& m) const {
    std::uint64_t c = 0;
    const auto& d = m.data();
    for (std::size_t k = d.size(); k-- > 0;) c = c * p() + d[k];
    return c;
  }

  void enumerate(std::uint64_t expected) {
    const int nn = n() * n();
    std::uint64_t space = 1;
    bool dense = true;
    for (int k = 0; k < nn; ++k) {
      space *= p();
      if (space > kDenseCodeLimit) {
        dense = false;
        break;
      }
    }
    if (dense) dense_.assign(space, kNone);

    std::vector<Matrix> gens;
    for (int i = 0; i < n(); ++i) {
      for (int j = 0; j < n(); ++j) {
        if (i != j) gens.push_back(Matrix::elementary(n(), p(), i, j, 1));
      }
    }
    gens_ = gens;

    entries_.reserve(expected * static_cast<std::size_t>(nn));
    auto add = [&](const Matrix& m) -> bool {
      const auto c = code(m);
      if (dense) {
        if (dense_[c] != kNone) return false;
        dense_[c] = static_cast<ElementId>(count_);
      } else if (!sparse_.emplace(c, static_cast<ElementId>(count_)).second) {
        return false;
      }
      for (auto v : m.data()) entries_.push_back(static_cast<std::uint8_t>(v));
      ++count_;
      return true;
    };
    add(sl_.identity());
    for (std::size_t head = 0; head < count_; ++head) {
      const Matrix g = element(static_cast<ElementId>(head));
      for (const auto& x : gens) add(g * x);
    }
    if (count_ != expected) {
      throw Error("enumeration produced " + std::to_string(count_) + " elements, expected " + std::to_string(expected));
    }

    inverse_.resize(count_);
    borel_ = ElementSet(count_);
    torus_ = ElementSet(count_);
    unipotent_ = ElementSet(count_);
    lower_unipotent_ = ElementSet(count_);
    for (ElementId g = 0; g < count_; ++g) {
      const Matrix m = element(g);
      inverse_[g] = id_of(m.inverse());
      if (m.is_upper_triangular()) borel_.insert(g);
      if (m.is_diagonal()) torus_.insert(g);
      if (m.is_unipotent_upper()) unipotent_.insert(g);
      bool lower = true;
      for (int i = 0; i < n() && lower; ++i) {
        for (int j = i; j < n(); ++j) {
          if (m(i, j) != (i == j ? 1U : 0U)) {
            lower = false;
            break;
          }
        }
      }
      if (lower) lower_unipotent_.insert(g);
    }
  }

  /// Orbit closure under conjugation by the elementary generators.
  void compute_classes() {
    std::vector<Matrix> gen_inv;
    for (const auto& x : gens_) gen_inv.push_back(x.inverse());
    constexpr std::size_t kUnassigned = ~std::size_t{0};
    class_of_.assign(count_, kUnassigned);
    const std::uint32_t full_mask = (std::uint32_t{1} << (n() - 1)) - 1;
    for (ElementId start = 0; start < count_; ++start) {
      if (class_of_[start] != kUnassigned) continue;
      const std::size_t cid = classes_.size();
      ConjClassRecord rec;
      rec.representative = start;
      class_of_[start] = cid;
      std::deque<ElementId> queue{start};
      while (!queue.empty()) {
        const ElementId g = queue.front();
        queue.pop_front();
        rec.members.push_back(g);
        const Matrix m = element(g);
        for (std::size_t k = 0; k < gens_.size(); ++k) {
          const ElementId h = id_of(gen_inv[k] * m * gens_[k]);
          if (class_of_[h] == kUnassigned) {
            class_of_[h] = cid;
            queue.push_back(h);
          }
        }
      }
      std::sort(rec.members.begin(), rec.members.end());
      for (auto g : rec.members) {
        if (borel_.contains(g)) rec.diagram_set.insert(sl_.diagram_mask(element(g)));
      }
      rec.is_central = rec.members.size() == 1;
      rec.is_U_regular = rec.diagram_set.count(full_mask) > 0;
      rec.contains_regular_semisimple = sl_.is_regular_semisimple(element(start));
      classes_.push_back(std::move(rec));
    }
    class_products_.assign(classes_.size() * classes_.size(), {});
  }

  struct ProductSlot {
    bool computed = false;
    std::vector<std::size_t> classes;
  };

  SLContext sl_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> entries_;
  std::vector<ElementId> dense_;
  std::unordered_map<std::uint64_t, ElementId> sparse_;
  std::vector<Matrix> gens_;
  std::vector<ElementId> inverse_;
  ElementSet borel_, torus_, unipotent_, lower_unipotent_;
  std::vector<ConjClassRecord> classes_;
  std::vector<std::size_t> class_of_;
  mutable std::vector<ProductSlot> class_products_;
};

inline FiniteGroupContext build_context(int n, fp::Elem p) { return FiniteGroupContext(n, p); }

/// {a b : a in s1, b in s2}.
inline ElementSet set_product(const FiniteGroupContext& g, const ElementSet& s1, const ElementSet& s2) {
  ElementSet out(g.order());
  const auto b_members = s2.members();
  std::vector<Matrix> bs;
  bs.reserve(b_members.size());
  for (auto b : b_members) bs.push_back(g.element(b));
  for (auto a : s1.members()) {
    const Matrix am = g.element(a);
    for (const auto& bm : bs) out.insert(g.id_of(am * bm));
    if (out.size() == g.order()) break;
  }
  return out;
}

/// D(C) as binary diagrams.
inline std::vector<MarkedDiagram> class_diagram_set(const FiniteGroupContext& g, std::size_t c) {
  std::vector<MarkedDiagram> out;
  for (auto mask : g.classes().at(c).diagram_set) out.push_back(g.sl().diagram_from_mask(mask));
  return out;
}

}  // namespace mdiag
