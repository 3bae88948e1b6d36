#pragma once

// Constructive procedures over lists of counting diagrams: peeling minimal
// regular subsets, partitioning into regular blocks, and searching for
// type-(r,s) witnesses. Indices (not values) form the ground set, so equal
// diagrams at different positions are distinct members.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/marked_diagram.hpp"

namespace mdiag {

/// Sorted 0-based positions into a diagram list.
using IndexSet = std::vector<std::size_t>;

struct MinimalSubsetResult {
  std::optional<IndexSet> indices;
  /// First coordinate no diagram marks, when infeasible.
  std::optional<std::size_t> uncovered_coordinate;

  bool feasible() const { return indices.has_value(); }
};

namespace detail {

inline bool covers_full(std::span<const Coeff> acc) {
  return std::all_of(acc.begin(), acc.end(), [](Coeff c) { return c >= 1; });
}

/// Scan `candidates` in order accumulating until every node is marked, then
/// drop members right-to-left while the rest still covers.
inline std::optional<IndexSet> minimal_cover(std::span<const MarkedDiagram> ds, std::span<const std::size_t> candidates,
                                             std::size_t rank) {
  std::vector<Coeff> acc(rank, 0);
  IndexSet chosen;
  for (auto i : candidates) {
    chosen.push_back(i);
    for (std::size_t a = 0; a < rank; ++a) acc[a] += ds[i][a];
    if (covers_full(acc)) break;
  }
  if (!covers_full(acc)) return std::nullopt;
  for (std::size_t pos = chosen.size(); pos-- > 0;) {
    const auto i = chosen[pos];
    bool still = true;
    for (std::size_t a = 0; a < rank; ++a) {
      if (acc[a] - ds[i][a] == 0) {
        still = false;
        break;
      }
    }
    if (still) {
      for (std::size_t a = 0; a < rank; ++a) acc[a] -= ds[i][a];
      chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(pos));
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline MarkedDiagram block_sum(std::span<const MarkedDiagram> ds, const IndexSet& block) {
  MarkedDiagram acc = MarkedDiagram::zero(ds.front().system_ptr());
  for (auto i : block) acc = add(acc, ds[i]);
  return acc;
}

}  // namespace detail

/// An inclusion-minimal set of positions whose diagrams sum to at least the
/// fully marked diagram. Such a set never has more than rank() members.
inline MinimalSubsetResult minimal_regular_subset(std::span<const MarkedDiagram> ds) {
  require_common(ds, DiagramMode::counting, "minimal_regular_subset");
  const std::size_t rank = ds.front().rank();
  IndexSet all(ds.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  MinimalSubsetResult out;
  out.indices = detail::minimal_cover(ds, all, rank);
  if (!out.indices) {
    const auto total = sum(ds);
    for (std::size_t a = 0; a < rank; ++a) {
      if (total[a] == 0) {
        out.uncovered_coordinate = a;
        break;
      }
    }
  }
  return out;
}

struct PartitionCertificate {
  std::vector<IndexSet> blocks;
  std::vector<MarkedDiagram> block_sums;
};

/// Splits the positions into m blocks, each summing to at least the fully
/// marked diagram. Requires every diagram <= full (entries 0 or 1, as for
/// class diagrams) and sum(ds) >= m * rank * full. Without the first bound
/// the induction breaks: A1, [2], m = 2.
///
/// Follows the induction directly: peel one minimal regular subset from the
/// remaining positions (scanned in input order), repeat m - 1 times, and give
/// the remainder to the last block.
inline PartitionCertificate partition_regular(std::span<const MarkedDiagram> ds, std::size_t m) {
  require_common(ds, DiagramMode::counting, "partition_regular");
  if (m == 0) throw InvalidArgument("partition_regular: m must be positive");
  const auto& rs = ds.front().system_ptr();
  const std::size_t rank = ds.front().rank();
  const auto full = full_diagram(rs, DiagramMode::counting);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!geq(full, ds[i])) {
      throw PreconditionFailed("partition_regular: diagram " + std::to_string(i) + " = " + ds[i].str() +
                               " has an entry above 1");
    }
  }
  const auto total = sum(ds);
  const auto needed = scale(static_cast<Coeff>(m * rank), full_diagram(rs, DiagramMode::counting));
  if (!geq(total, needed)) {
    throw PreconditionFailed("partition_regular: sum " + total.str() + " is not >= " + needed.str());
  }
  PartitionCertificate cert;
  IndexSet remaining(ds.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  for (std::size_t j = 1; j < m; ++j) {
    auto block = detail::minimal_cover(ds, remaining, rank);
    if (!block) throw Error("partition_regular: no regular subset left at block " + std::to_string(j));
    IndexSet rest;
    std::set_difference(remaining.begin(), remaining.end(), block->begin(), block->end(), std::back_inserter(rest));
    remaining = std::move(rest);
    cert.blocks.push_back(std::move(*block));
  }
  cert.blocks.push_back(std::move(remaining));
  for (const auto& b : cert.blocks) cert.block_sums.push_back(detail::block_sum(ds, b));
  return cert;
}

/// Re-checks a partition certificate from scratch: disjoint blocks covering
/// every position, stored sums equal recomputed sums, each >= full.
inline bool revalidate(const PartitionCertificate& cert, std::span<const MarkedDiagram> ds) {
  if (ds.empty() || cert.blocks.size() != cert.block_sums.size()) return false;
  std::vector<int> seen(ds.size(), 0);
  const auto full = full_diagram(ds.front().system_ptr(), DiagramMode::counting);
  for (std::size_t b = 0; b < cert.blocks.size(); ++b) {
    for (auto i : cert.blocks[b]) {
      if (i >= ds.size() || seen[i]++) return false;
    }
    const auto s = detail::block_sum(ds, cert.blocks[b]);
    if (!(s == cert.block_sums[b]) || !geq(s, full)) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

/// Blocks and anchors showing a list is of type (r, s): block j contains
/// anchors[j] and at least s members whose diagram is >= the anchor's.
struct TypeRSWitness {
  std::size_t r = 0;
  std::size_t s = 0;
  std::vector<IndexSet> blocks;
  std::vector<std::size_t> anchors;
};

struct TypeRSSearch {
  std::optional<TypeRSWitness> witness;
  /// True when every anchor choice was examined, so a missing witness means
  /// none exists.
  bool exhaustive = true;
  std::uint64_t anchor_sets_tried = 0;
};

/// Lists up to this size are always searched exhaustively.
inline constexpr std::size_t kTypeRSExactCutoff = 12;
/// Anchor multisets examined before the search gives up as inconclusive.
inline constexpr std::uint64_t kTypeRSAnchorBudget = 200000;

namespace detail {

/// Kuhn's augmenting-path matching of helper slots to positions.
class SlotMatcher {
 public:
  SlotMatcher(std::vector<std::vector<std::size_t>> adj, std::size_t right)
      : adj_(std::move(adj)), match_right_(right, kNone) {}

  bool saturate() {
    for (std::size_t slot = 0; slot < adj_.size(); ++slot) {
      std::vector<char> visited(match_right_.size(), 0);
      if (!augment(slot, visited)) return false;
    }
    return true;
  }
  std::size_t owner(std::size_t right) const { return match_right_[right]; }
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  bool augment(std::size_t slot, std::vector<char>& visited) {
    for (auto v : adj_[slot]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match_right_[v] == kNone || augment(match_right_[v], visited)) {
        match_right_[v] = slot;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_right_;
};

inline std::optional<TypeRSWitness> assign_blocks(std::span<const MarkedDiagram> ds, const std::vector<std::size_t>& anchors,
                                                  std::size_t s) {
  const std::size_t r = anchors.size();
  std::vector<char> is_anchor(ds.size(), 0);
  for (auto a : anchors) is_anchor[a] = 1;
  // Block j needs s - 1 helpers besides its anchor.
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::size_t> slot_block;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::size_t> ok;
    for (std::size_t e = 0; e < ds.size(); ++e) {
      if (!is_anchor[e] && geq(ds[e], ds[anchors[j]])) ok.push_back(e);
    }
    if (ok.size() + 1 < s) return std::nullopt;
    for (std::size_t k = 0; k + 1 < s; ++k) {
      adj.push_back(ok);
      slot_block.push_back(j);
    }
  }
  SlotMatcher matcher(std::move(adj), ds.size());
  if (!matcher.saturate()) return std::nullopt;
  TypeRSWitness w;
  w.r = r;
  w.s = s;
  w.anchors = anchors;
  w.blocks.assign(r, {});
  for (std::size_t j = 0; j < r; ++j) w.blocks[j].push_back(anchors[j]);
  for (std::size_t e = 0; e < ds.size(); ++e) {
    if (is_anchor[e]) continue;
    const auto slot = matcher.owner(e);
    w.blocks[slot == SlotMatcher::kNone ? 0 : slot_block[slot]].push_back(e);
  }
  for (auto& b : w.blocks) std::sort(b.begin(), b.end());
  return w;
}

}  // namespace detail

/// Searches for a type-(r,s) witness. With `require_regular_anchor_sum` the
/// anchors must also sum to at least the fully marked diagram.
///
/// Positions holding equal diagrams are interchangeable, so anchors are
/// enumerated as multisets of distinct values; for each choice, helper
/// assignment is an exact bipartite matching. The search is therefore exact
/// whenever it finishes within kTypeRSAnchorBudget anchor choices, which
/// always holds for lists of at most kTypeRSExactCutoff diagrams.
inline TypeRSSearch find_type_rs(std::span<const MarkedDiagram> ds, std::size_t r, std::size_t s,
                                 bool require_regular_anchor_sum) {
  require_common(ds, DiagramMode::counting, "find_type_rs");
  if (r == 0 || s == 0) throw InvalidArgument("find_type_rs: r and s must be positive");
  TypeRSSearch out;
  if (r * s > ds.size()) return out;

  // Distinct values in first-occurrence order, with their positions.
  std::vector<std::vector<std::size_t>> groups;
  std::map<std::vector<Coeff>, std::size_t> group_of;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto [it, fresh] = group_of.emplace(ds[i].coeffs(), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  const std::size_t rank = ds.front().rank();
  std::vector<std::size_t> take(groups.size(), 0);

  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t g, std::size_t left) -> bool {
    if (left == 0) {
      if (++out.anchor_sets_tried > kTypeRSAnchorBudget) {
        out.exhaustive = false;
        return true;
      }
      std::vector<std::size_t> anchors;
      std::vector<Coeff> acc(rank, 0);
      for (std::size_t k = 0; k < groups.size(); ++k) {
        for (std::size_t t = 0; t < take[k]; ++t) {
          anchors.push_back(groups[k][t]);
          for (std::size_t a = 0; a < rank; ++a) acc[a] += ds[groups[k][t]][a];
        }
      }
      if (require_regular_anchor_sum && !detail::covers_full(acc)) return false;
      std::sort(anchors.begin(), anchors.end());
      out.witness = detail::assign_blocks(ds, anchors, s);
      return out.witness.has_value();
    }
    if (g == groups.size()) return false;
    const std::size_t most = std::min(left, groups[g].size());
    for (std::size_t t = most + 1; t-- > 0;) {
      take[g] = t;
      if (rec(g + 1, left - t)) return true;
    }
    take[g] = 0;
    return false;
  };
  rec(0, r);
  if (out.witness) out.exhaustive = true;
  return out;
}

/// Re-checks a type-(r,s) witness against the definition alone.
inline bool revalidate(const TypeRSWitness& w, std::span<const MarkedDiagram> ds, bool require_regular_anchor_sum) {
  if (ds.empty() || w.r == 0 || w.blocks.size() != w.r || w.anchors.size() != w.r) return false;
  std::vector<int> seen(ds.size(), 0);
  for (const auto& b : w.blocks) {
    for (auto i : b) {
      if (i >= ds.size() || seen[i]++) return false;
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; })) return false;
  MarkedDiagram anchor_sum = MarkedDiagram::zero(ds.front().system_ptr());
  for (std::size_t j = 0; j < w.r; ++j) {
    const auto a = w.anchors[j];
    if (std::find(w.blocks[j].begin(), w.blocks[j].end(), a) == w.blocks[j].end()) return false;
    const auto above = std::count_if(w.blocks[j].begin(), w.blocks[j].end(), [&](std::size_t e) { return geq(ds[e], ds[a]); });
    if (static_cast<std::size_t>(above) < w.s) return false;
    anchor_sum = add(anchor_sum, ds[a]);
  }
  return !require_regular_anchor_sum || is_regular(anchor_sum);
}

}  // namespace mdiag
