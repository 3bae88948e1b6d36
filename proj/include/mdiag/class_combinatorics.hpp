#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mdiag/detail/lattice.hpp"
#include "mdiag/error.hpp"
#include "mdiag/root_system.hpp"

namespace mdiag {

/// Dimension bookkeeping for the parabolic P_K of [L_J, L_J].
///
/// dim_levi counts the torus of [L_J, L_J] plus the roots of K; the radical's
/// abelianization is spanned by the positive roots of level one, level being
/// the sum of coordinates on J \ K.
struct DistinguishedReport {
  std::vector<Root> J;
  std::vector<Root> K;
  int dim_levi = 0;
  int dim_abelianized_radical = 0;
  bool distinguished = false;
  /// Results are only meaningful in good characteristic; recorded, not enforced.
  bool assumes_good_characteristic = true;
};

namespace detail {

using Mask = std::uint32_t;

/// Positive roots of Phi_J written in the basis J, together with their
/// supports as bitmasks over J.
struct BasisCoordinates {
  std::vector<std::vector<int>> coords;
  std::vector<Mask> supports;
};

/// Expresses every root of Z J cap Phi in the basis J. Throws if J is not a
/// simple system of the subsystem it spans.
inline BasisCoordinates basis_coordinates(const RootSystem& rs, std::span<const Root> base) {
  if (base.size() > 31) throw InvalidArgument("simple system too large");
  std::vector<IntVec> basis;
  for (const auto& b : base) {
    rs.require_root(b, "basis element");
    basis.emplace_back(b.coeffs().begin(), b.coeffs().end());
  }
  if (rational_rank(basis) != basis.size()) throw InvalidArgument("roots of J are linearly dependent");
  const IntLattice lattice(basis, static_cast<std::size_t>(rs.rank()));
  BasisCoordinates out;
  for (const auto& x : rs.roots()) {
    const IntVec v(x.coeffs().begin(), x.coeffs().end());
    if (!lattice.contains(v)) continue;
    auto c = integer_coordinates(basis, v);
    if (!c) throw InvalidArgument("J is not a simple system: " + x.str() + " has no integral coordinates");
    const bool nonneg = std::all_of(c->begin(), c->end(), [](std::int64_t t) { return t >= 0; });
    const bool nonpos = std::all_of(c->begin(), c->end(), [](std::int64_t t) { return t <= 0; });
    if (!nonneg && !nonpos) {
      throw InvalidArgument("J is not a simple system: " + x.str() + " has mixed-sign coordinates");
    }
    if (!nonneg) continue;
    std::vector<int> ci(c->begin(), c->end());
    Mask m = 0;
    for (std::size_t k = 0; k < ci.size(); ++k) {
      if (ci[k] != 0) m |= Mask{1} << k;
    }
    out.coords.push_back(std::move(ci));
    out.supports.push_back(m);
  }
  return out;
}

/// Distinguished test for the sub-base `j_mask` of a coordinatized base and
/// K = `k_mask` (a subset of j_mask).
inline void fill_dimensions(const BasisCoordinates& bc, Mask j_mask, Mask k_mask, DistinguishedReport& rep) {
  int k_roots = 0;
  int level_one = 0;
  const Mask free = j_mask & ~k_mask;
  for (std::size_t i = 0; i < bc.coords.size(); ++i) {
    if ((bc.supports[i] & ~j_mask) != 0) continue;
    if ((bc.supports[i] & ~k_mask) == 0) ++k_roots;
    int level = 0;
    for (std::size_t k = 0; k < bc.coords[i].size(); ++k) {
      if (free >> k & 1U) level += bc.coords[i][k];
    }
    if (level == 1) ++level_one;
  }
  rep.dim_levi = __builtin_popcount(j_mask) + 2 * k_roots;
  rep.dim_abelianized_radical = level_one;
  rep.distinguished = rep.dim_levi == rep.dim_abelianized_radical;
}

inline std::vector<Root> pick(std::span<const Root> base, Mask m) {
  std::vector<Root> out;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (m >> k & 1U) out.push_back(base[k]);
  }
  return out;
}

}  // namespace detail

/// Decides whether (J, K) is distinguished. J must be a simple system of the
/// subsystem it spans (it may contain non-simple roots of the ambient
/// system), and K must be a subset of J.
inline DistinguishedReport is_distinguished_pair(const RootSystem& rs, std::span<const Root> J, std::span<const Root> K) {
  const auto bc = detail::basis_coordinates(rs, J);
  detail::Mask j_mask = (J.size() == 32) ? ~detail::Mask{0} : ((detail::Mask{1} << J.size()) - 1);
  detail::Mask k_mask = 0;
  for (const auto& k : K) {
    auto it = std::find(J.begin(), J.end(), k);
    if (it == J.end()) throw InvalidArgument("K element " + k.str() + " is not in J");
    k_mask |= detail::Mask{1} << (it - J.begin());
  }
  DistinguishedReport rep;
  rep.J.assign(J.begin(), J.end());
  rep.K.assign(K.begin(), K.end());
  detail::fill_dimensions(bc, j_mask, k_mask, rep);
  return rep;
}

/// Every distinguished pair (J, K) with K subset of J subset of Delta.
inline std::vector<DistinguishedReport> distinguished_pairs(const RootSystem& rs) {
  if (rs.rank() > kEnumerationRankCap) {
    throw BudgetExceeded("distinguished-pair enumeration is capped at rank " + std::to_string(kEnumerationRankCap));
  }
  const auto bc = detail::basis_coordinates(rs, rs.simple_roots());
  std::vector<DistinguishedReport> out;
  const detail::Mask all = (detail::Mask{1} << rs.rank()) - 1;
  for (detail::Mask j = 0; j <= all; ++j) {
    for (detail::Mask k = j;; k = (k - 1) & j) {
      DistinguishedReport rep;
      detail::fill_dimensions(bc, j, k, rep);
      if (rep.distinguished) {
        rep.J = detail::pick(rs.simple_roots(), j);
        rep.K = detail::pick(rs.simple_roots(), k);
        out.push_back(std::move(rep));
      }
      if (k == 0) break;
    }
  }
  return out;
}

/// Combinatorial address (I, I', J, K) of a Jordan class.
struct JordanDatum {
  std::vector<int> levi;          ///< I, 0-based simple-root indices
  std::vector<Root> pseudo_base;  ///< I'
  std::vector<Root> J;
  std::vector<Root> K;
  bool proper_levi = true;
  std::optional<int> envelope_root;
};

/// All quadruples (I, I', J, K) with (I, I') of pseudo-Levi type in normal
/// form, J a subset of I' and (J, K) distinguished.
inline std::vector<JordanDatum> enumerate_jordan_data(const RootSystem& rs) {
  if (rs.rank() > kEnumerationRankCap) {
    throw BudgetExceeded("Jordan data enumeration is capped at rank " + std::to_string(kEnumerationRankCap));
  }
  std::vector<JordanDatum> out;
  for (const auto& pair : pseudo_levi_pairs(rs)) {
    const auto bc = detail::basis_coordinates(rs, pair.pseudo_base);
    const detail::Mask all = (detail::Mask{1} << pair.pseudo_base.size()) - 1;
    for (detail::Mask j = 0; j <= all; ++j) {
      for (detail::Mask k = j;; k = (k - 1) & j) {
        DistinguishedReport rep;
        detail::fill_dimensions(bc, j, k, rep);
        if (rep.distinguished) {
          out.push_back({pair.levi, pair.pseudo_base, detail::pick(pair.pseudo_base, j),
                         detail::pick(pair.pseudo_base, k), pair.proper_levi, pair.envelope_root});
        }
        if (k == 0) break;
      }
    }
  }
  return out;
}

/// Support of the marked diagram attached to the Jordan class of d:
/// (Delta \ I) cup ((J \ K) cap Delta), as sorted 0-based indices.
inline std::vector<int> jordan_diagram_support(const RootSystem& rs, const JordanDatum& d) {
  std::vector<char> marked(static_cast<std::size_t>(rs.rank()), 1);
  for (int i : d.levi) marked.at(static_cast<std::size_t>(i)) = 0;
  for (const auto& x : d.J) {
    if (std::find(d.K.begin(), d.K.end(), x) != d.K.end()) continue;
    if (auto s = x.simple_index()) marked[*s] = 1;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < marked.size(); ++i) {
    if (marked[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

enum class LeviKind { proper_levi, proper_pseudo_levi, invalid };

inline const char* to_string(LeviKind k) {
  switch (k) {
    case LeviKind::proper_levi:
      return "proper_levi";
    case LeviKind::proper_pseudo_levi:
      return "proper_pseudo_levi";
    default:
      return "invalid";
  }
}

inline LeviKind classify_levi_type(const RootSystem& rs, std::span<const int> levi, std::span<const Root> pseudo_base) {
  std::vector<int> sorted_levi(levi.begin(), levi.end());
  std::sort(sorted_levi.begin(), sorted_levi.end());
  if (std::adjacent_find(sorted_levi.begin(), sorted_levi.end()) != sorted_levi.end()) return LeviKind::invalid;
  for (int i : sorted_levi) {
    if (i < 0 || i >= rs.rank()) return LeviKind::invalid;
  }
  for (const auto& x : pseudo_base) {
    if (x.rank() != static_cast<std::size_t>(rs.rank()) || !rs.contains(x)) return LeviKind::invalid;
  }
  const std::set<Root> given(pseudo_base.begin(), pseudo_base.end());
  if (given.size() != pseudo_base.size()) return LeviKind::invalid;
  const auto levi_roots = simple_roots_of(rs, sorted_levi);
  std::set<Root> expected(levi_roots.begin(), levi_roots.end());
  if (given == expected) return LeviKind::proper_levi;
  for (int beta = 0; beta < rs.rank(); ++beta) {
    if (std::binary_search(sorted_levi.begin(), sorted_levi.end(), beta)) continue;
    auto gamma = detail::pseudo_levi_extension(rs, sorted_levi, beta);
    if (!gamma) continue;
    auto with_gamma = expected;
    with_gamma.insert(*gamma);
    if (given == with_gamma) return LeviKind::proper_pseudo_levi;
  }
  return LeviKind::invalid;
}

}  // namespace mdiag
