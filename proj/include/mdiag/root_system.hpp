#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdiag/detail/lattice.hpp"
#include "mdiag/error.hpp"

namespace mdiag {

enum class RootType : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline char to_char(RootType t) { return static_cast<char>(t); }

/// Largest rank for which exhaustive enumerations (pseudo-Levi pairs, Jordan
/// data) are attempted.
inline constexpr int kEnumerationRankCap = 8;
/// Largest rank accepted by build_root_system at all.
inline constexpr int kMaxRank = 32;

/// A root written in the simple-root basis.
class Root {
 public:
  Root() = default;
  explicit Root(std::vector<int> coeffs) : coeffs_(std::move(coeffs)) {}

  static Root simple(std::size_t rank, std::size_t i) {
    std::vector<int> c(rank, 0);
    c.at(i) = 1;
    return Root(std::move(c));
  }

  const std::vector<int>& coeffs() const { return coeffs_; }
  std::size_t rank() const { return coeffs_.size(); }
  int operator[](std::size_t i) const { return coeffs_[i]; }

  int height() const {
    int h = 0;
    for (int c : coeffs_) h += c;
    return h;
  }
  bool is_positive() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int c) { return c >= 0; }) && !is_zero();
  }
  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int c) { return c == 0; });
  }
  /// Index of the simple root this is, if it is one.
  std::optional<std::size_t> simple_index() const {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (coeffs_[i] != 1 || idx) return std::nullopt;
      idx = i;
    }
    return idx;
  }

  Root operator-() const {
    Root r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Root operator+(Root a, const Root& b) {
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }
  friend Root operator-(const Root& a, const Root& b) { return a + (-b); }
  friend Root operator*(int k, Root a) {
    for (auto& c : a.coeffs_) c *= k;
    return a;
  }

  auto operator<=>(const Root&) const = default;
  bool operator==(const Root&) const = default;

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
    os << ']';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Root& r) { return os << r.str(); }

 private:
  std::vector<int> coeffs_;
};

struct ComponentType {
  RootType type;
  int rank;

  auto operator<=>(const ComponentType&) const = default;
  std::string str() const { return std::string(1, to_char(type)) + std::to_string(rank); }
};

inline std::string join_types(const std::vector<ComponentType>& types) {
  if (types.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < types.size(); ++i) s += (i ? "x" : "") + types[i].str();
  return s;
}

class RootSystem;
using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Immutable irreducible root system in the simple-root basis.
///
/// Numbering follows Bourbaki: B_r has alpha_r short, C_r has alpha_r long,
/// D_r branches at alpha_{r-2}, E_r has alpha_2 attached to alpha_4, F_4 has
/// alpha_1, alpha_2 long and G_2 has alpha_1 short. Squared lengths are
/// normalized with short roots of length 1; the form is stored doubled so it
/// stays integral.
class RootSystem {
 public:
  RootType type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, to_char(type_)) + std::to_string(rank_); }

  const std::vector<Root>& simple_roots() const { return simple_; }
  /// All of Phi, positive roots first (by height, then lexicographically),
  /// followed by their negatives in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  /// cartan()[i][j] == <alpha_i, alpha_j> == 2(alpha_i, alpha_j) / (alpha_j, alpha_j).
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  bool contains(const Root& r) const { return std::binary_search(sorted_.begin(), sorted_.end(), r); }

  /// 2(x, y) for arbitrary integer vectors.
  std::int64_t form2(const Root& x, const Root& y) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < rank_; ++j) s += std::int64_t{x[i]} * y[j] * gram2_[i][j];
    }
    return s;
  }
  /// Squared length with short roots normalized to 1.
  int length2(const Root& r) const { return static_cast<int>(form2(r, r) / 2); }

  /// <beta, alpha> without membership checks. alpha must be non-zero.
  int raw_pairing(const Root& beta, const Root& alpha) const {
    return static_cast<int>(2 * form2(beta, alpha) / form2(alpha, alpha));
  }

  Root reflect(const Root& beta, const Root& alpha) const { return beta - raw_pairing(beta, alpha) * alpha; }

  void require_root(const Root& r, std::string_view what) const {
    if (r.rank() != static_cast<std::size_t>(rank_) || !contains(r)) {
      throw InvalidArgument(std::string(what) + " " + r.str() + " is not a root of " + label());
    }
  }

 private:
  friend RootSystemPtr build_root_system(RootType type, int rank);

  RootSystem(RootType type, int rank, std::vector<int> len2, std::vector<std::pair<int, int>> edges);

  RootType type_;
  int rank_;
  std::vector<Root> simple_;
  std::vector<Root> roots_;
  std::vector<Root> positive_;
  std::vector<Root> sorted_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<std::int64_t>> gram2_;
};

inline RootSystem::RootSystem(RootType type, int rank, std::vector<int> len2,
                              std::vector<std::pair<int, int>> edges)
    : type_(type), rank_(rank) {
  const auto r = static_cast<std::size_t>(rank);
  cartan_.assign(r, std::vector<int>(r, 0));
  gram2_.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    cartan_[i][i] = 2;
    gram2_[i][i] = 2 * len2[i];
  }
  for (auto [a, b] : edges) {
    // Adjacent simple roots satisfy 2(a_i, a_j) = -max(|a_i|^2, |a_j|^2).
    const int m = std::max(len2[a], len2[b]);
    gram2_[a][b] = gram2_[b][a] = -m;
    cartan_[a][b] = -m / len2[b];
    cartan_[b][a] = -m / len2[a];
  }
  for (std::size_t i = 0; i < r; ++i) simple_.push_back(Root::simple(r, i));

  // Phi = W . Delta, by closure under simple reflections.
  std::set<Root> seen(simple_.begin(), simple_.end());
  std::vector<Root> frontier = simple_;
  while (!frontier.empty()) {
    std::vector<Root> next;
    for (const auto& v : frontier) {
      for (const auto& a : simple_) {
        Root w = reflect(v, a);
        if (seen.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  for (const auto& x : seen) {
    if (x.is_positive()) positive_.push_back(x);
  }
  std::sort(positive_.begin(), positive_.end(), [](const Root& a, const Root& b) {
    return std::pair(a.height(), a) < std::pair(b.height(), b);
  });
  roots_ = positive_;
  for (const auto& x : positive_) roots_.push_back(-x);
  sorted_.assign(seen.begin(), seen.end());
}

/// Parses labels like "A4", "e8", "G2".
inline std::pair<RootType, int> parse_system_label(std::string_view label) {
  if (label.size() < 2) throw InvalidArgument("malformed system label '" + std::string(label) + "'");
  const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  if (c < 'A' || c > 'G') throw InvalidArgument("unknown root system type '" + std::string(1, label[0]) + "'");
  int rank = 0;
  for (char d : label.substr(1)) {
    if (d < '0' || d > '9' || rank > 1000) throw InvalidArgument("malformed rank in '" + std::string(label) + "'");
    rank = rank * 10 + (d - '0');
  }
  return {static_cast<RootType>(c), rank};
}

/// Builds the irreducible root system of the given type and rank.
inline RootSystemPtr build_root_system(RootType type, int rank) {
  auto fail = [&](const std::string& constraint) -> RootSystemPtr {
    throw InvalidArgument(std::string(1, to_char(type)) + std::to_string(rank) +
                          " is not a valid simple type: " + constraint);
  };
  if (rank > kMaxRank) fail("rank must be at most " + std::to_string(kMaxRank));
  std::vector<int> len2(static_cast<std::size_t>(std::max(rank, 0)), 1);
  std::vector<std::pair<int, int>> edges;
  auto chain = [&](int n) {
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  };
  switch (type) {
    case RootType::A:
      if (rank < 1) fail("A_r needs r >= 1");
      chain(rank);
      break;
    case RootType::B:
      if (rank < 2) fail("B_r needs r >= 2");
      chain(rank);
      std::fill(len2.begin(), len2.end(), 2);
      len2[rank - 1] = 1;
      break;
    case RootType::C:
      if (rank < 3) fail("C_r needs r >= 3");
      chain(rank);
      len2[rank - 1] = 2;
      break;
    case RootType::D:
      if (rank < 4) fail("D_r needs r >= 4");
      chain(rank - 1);
      edges.emplace_back(rank - 3, rank - 1);
      break;
    case RootType::E:
      if (rank < 6 || rank > 8) fail("E_r needs r in {6,7,8}");
      edges = {{0, 2}, {1, 3}, {2, 3}};
      for (int i = 3; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
      break;
    case RootType::F:
      if (rank != 4) fail("F_r needs r == 4");
      chain(4);
      len2 = {2, 2, 1, 1};
      break;
    case RootType::G:
      if (rank != 2) fail("G_r needs r == 2");
      chain(2);
      len2 = {1, 3};
      break;
    default:
      fail("unknown type");
  }
  return RootSystemPtr(new RootSystem(type, rank, std::move(len2), std::move(edges)));
}

inline RootSystemPtr build_root_system(std::string_view label) {
  auto [t, r] = parse_system_label(label);
  return build_root_system(t, r);
}

/// <beta, alpha> = 2(beta, alpha) / (alpha, alpha) for beta, alpha in Phi.
inline int pairing(const RootSystem& rs, const Root& beta, const Root& alpha) {
  rs.require_root(beta, "beta");
  rs.require_root(alpha, "alpha");
  return rs.raw_pairing(beta, alpha);
}

/// The unique root of maximal height.
inline Root highest_root(const RootSystem& rs) { return rs.positive_roots().back(); }

/// Connected components of the Dynkin graph on `base` (indices into `base`).
inline std::vector<std::vector<std::size_t>> dynkin_components(const RootSystem& rs, std::span<const Root> base) {
  const std::size_t n = base.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size() - 1);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (std::size_t w = 0; w < n; ++w) {
        if (comp[w] < 0 && rs.form2(base[v], base[w]) != 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// Identifies the Cartan type of one connected simple system.
inline ComponentType classify_component(const RootSystem& rs, std::span<const Root> base,
                                        std::span<const std::size_t> nodes) {
  const int n = static_cast<int>(nodes.size());
  std::vector<int> degree(nodes.size(), 0);
  int max_bond = 1;
  std::size_t bond_a = 0, bond_b = 0;
  int short_nodes = 0;
  int min_len = 1 << 30;
  for (auto v : nodes) min_len = std::min(min_len, rs.length2(base[v]));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (rs.length2(base[nodes[i]]) == min_len) ++short_nodes;
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const Root& x = base[nodes[i]];
      const Root& y = base[nodes[j]];
      if (rs.form2(x, y) == 0) continue;
      ++degree[i];
      ++degree[j];
      const int bond = rs.raw_pairing(x, y) * rs.raw_pairing(y, x);
      if (bond > max_bond) {
        max_bond = bond;
        bond_a = i;
        bond_b = j;
      }
    }
  }
  if (max_bond == 3) return {RootType::G, 2};
  if (max_bond == 2) {
    if (n == 2) return {RootType::B, 2};
    if (n == 4 && degree[bond_a] == 2 && degree[bond_b] == 2) return {RootType::F, 4};
    return {short_nodes == 1 ? RootType::B : RootType::C, n};
  }
  auto branch = std::find(degree.begin(), degree.end(), 3);
  if (branch == degree.end()) return {RootType::A, n};
  // Arm lengths from the branch node.
  const std::size_t b = static_cast<std::size_t>(branch - degree.begin());
  std::vector<int> arms;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == b || rs.form2(base[nodes[b]], base[nodes[j]]) == 0) continue;
    int len = 1;
    std::size_t prev = b, cur = j;
    for (;;) {
      std::size_t nxt = nodes.size();
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (k != prev && k != cur && rs.form2(base[nodes[cur]], base[nodes[k]]) != 0) nxt = k;
      }
      if (nxt == nodes.size()) break;
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {RootType::D, n};
  return {RootType::E, n};
}

inline std::vector<ComponentType> component_types(const RootSystem& rs, std::span<const Root> base) {
  std::vector<ComponentType> out;
  for (const auto& c : dynkin_components(rs, base)) out.push_back(classify_component(rs, base, c));
  std::sort(out.begin(), out.end());
  return out;
}

/// Phi_I = Z I cap Phi together with a simple system and its Cartan types.
struct SubsystemBase {
  std::vector<Root> generators;
  std::vector<Root> roots;  ///< Phi_I, positive part first
  std::vector<Root> base;   ///< simple system for Phi_I cap Phi^+
  std::vector<ComponentType> component_types;
};

inline SubsystemBase root_subsystem(const RootSystem& rs, std::span<const Root> generators) {
  SubsystemBase out;
  std::vector<detail::IntVec> gens;
  for (const auto& g : generators) {
    rs.require_root(g, "generator");
    out.generators.push_back(g);
    gens.emplace_back(g.coeffs().begin(), g.coeffs().end());
  }
  const detail::IntLattice lattice(std::move(gens), static_cast<std::size_t>(rs.rank()));
  std::vector<Root> positive;
  for (const auto& x : rs.positive_roots()) {
    if (lattice.contains(detail::IntVec(x.coeffs().begin(), x.coeffs().end()))) positive.push_back(x);
  }
  // Indecomposable elements of Phi_I^+ form its base.
  std::set<Root> pos_set(positive.begin(), positive.end());
  for (const auto& x : positive) {
    bool decomposable = false;
    for (const auto& y : positive) {
      if (y.height() >= x.height()) break;
      if (pos_set.count(x - y)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) out.base.push_back(x);
  }
  // height first, then simple-root index order
  std::sort(out.base.begin(), out.base.end(), [](const Root& a, const Root& b) {
    return a.height() != b.height() ? a.height() < b.height() : a > b;
  });
  out.roots = positive;
  for (const auto& x : positive) out.roots.push_back(-x);
  out.component_types = component_types(rs, out.base);
  return out;
}

/// All roots orthogonal to every element of S.
inline std::vector<Root> orthogonal_complement(const RootSystem& rs, std::span<const Root> s) {
  for (const auto& x : s) rs.require_root(x, "element");
  std::vector<Root> out;
  for (const auto& a : rs.roots()) {
    if (std::all_of(s.begin(), s.end(), [&](const Root& b) { return rs.form2(a, b) == 0; })) out.push_back(a);
  }
  return out;
}

/// {alpha_1, alpha_3, ..., alpha_{2 ceil(r/2) - 1}}.
inline std::vector<Root> odd_simple_roots(const RootSystem& rs) {
  std::vector<Root> out;
  for (int i = 0; i < rs.rank(); i += 2) out.push_back(rs.simple_roots()[static_cast<std::size_t>(i)]);
  return out;
}

inline std::vector<Root> simple_roots_of(const RootSystem& rs, std::span<const int> indices) {
  std::vector<Root> out;
  for (int i : indices) {
    if (i < 0 || i >= rs.rank()) throw InvalidArgument("simple root index " + std::to_string(i) + " out of range");
    out.push_back(rs.simple_roots()[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Pair (I, I') of pseudo-Levi type in normal form. `levi` holds I as sorted
/// 0-based simple-root indices; `pseudo_base` is a simple system of Phi_{I'}.
/// For proper pseudo-Levi pairs I' = I cup {gamma} where gamma is the negative
/// highest root of the non-type-A component of Phi_{I cup {beta}} containing
/// beta, and `envelope_root` records beta.
struct PseudoLeviPair {
  std::vector<int> levi;
  std::vector<Root> pseudo_base;
  bool proper_levi = true;
  std::optional<int> envelope_root;
  std::vector<ComponentType> component_types;
};

namespace detail {

inline std::vector<int> bits_to_indices(std::uint32_t mask, int rank) {
  std::vector<int> out;
  for (int i = 0; i < rank; ++i) {
    if (mask >> i & 1U) out.push_back(i);
  }
  return out;
}

/// gamma for (I, beta), if the component of Phi_{I cup {beta}} through beta is
/// not of type A and adjoining gamma gives a proper subsystem.
inline std::optional<Root> pseudo_levi_extension(const RootSystem& rs, const std::vector<int>& levi, int beta) {
  std::vector<int> envelope = levi;
  envelope.push_back(beta);
  std::sort(envelope.begin(), envelope.end());
  const auto env_roots = simple_roots_of(rs, envelope);
  std::size_t beta_pos = static_cast<std::size_t>(std::find(envelope.begin(), envelope.end(), beta) - envelope.begin());
  for (const auto& comp : dynkin_components(rs, env_roots)) {
    if (std::find(comp.begin(), comp.end(), beta_pos) == comp.end()) continue;
    if (classify_component(rs, env_roots, comp).type == RootType::A) return std::nullopt;
    std::vector<bool> in_comp(static_cast<std::size_t>(rs.rank()), false);
    for (auto c : comp) in_comp[static_cast<std::size_t>(envelope[c])] = true;
    // Highest root of the component: the tallest positive root supported on it.
    std::optional<Root> top;
    for (const auto& x : rs.positive_roots()) {
      bool inside = true;
      for (int i = 0; i < rs.rank(); ++i) {
        if (x[static_cast<std::size_t>(i)] != 0 && !in_comp[static_cast<std::size_t>(i)]) inside = false;
      }
      if (inside) top = x;
    }
    // Removing a node with coefficient 1 gives back the whole component.
    if (!top || (*top)[static_cast<std::size_t>(beta)] < 2) return std::nullopt;
    return -*top;
  }
  return std::nullopt;
}

}  // namespace detail

/// One representative per normal form: every proper Levi pair (I, I) and
/// every proper pseudo-Levi pair (I, I cup {gamma}) built by adjoining a
/// negative highest root.
inline std::vector<PseudoLeviPair> pseudo_levi_pairs(const RootSystem& rs) {
  if (rs.rank() > kEnumerationRankCap) {
    throw BudgetExceeded("pseudo-Levi enumeration is capped at rank " + std::to_string(kEnumerationRankCap));
  }
  std::vector<PseudoLeviPair> out;
  const int r = rs.rank();
  for (std::uint32_t mask = 0; mask < (1U << r); ++mask) {
    const auto levi = detail::bits_to_indices(mask, r);
    const auto levi_roots = simple_roots_of(rs, levi);
    out.push_back({levi, levi_roots, true, std::nullopt, component_types(rs, levi_roots)});
    for (int beta = 0; beta < r; ++beta) {
      if (mask >> beta & 1U) continue;
      auto gamma = detail::pseudo_levi_extension(rs, levi, beta);
      if (!gamma) continue;
      auto base = levi_roots;
      base.push_back(*gamma);
      auto types = component_types(rs, base);
      out.push_back({levi, std::move(base), false, beta, std::move(types)});
    }
  }
  return out;
}

}  // namespace mdiag
