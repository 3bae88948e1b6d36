#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/marked_diagram.hpp"
#include "mdiag/partition.hpp"

namespace mdiag {

enum class TheoremId { propA, propB, thmC, corSumToRegular, conjecture };

inline const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::propA:
      return "propA";
    case TheoremId::propB:
      return "propB";
    case TheoremId::thmC:
      return "thmC";
    case TheoremId::corSumToRegular:
      return "corSumToRegular";
    default:
      return "conjecture";
  }
}

/// Per-coordinate comparison of the diagram sum against a threshold.
struct InequalityTrace {
  std::vector<Coeff> sum;
  std::vector<Coeff> threshold;
  std::optional<std::size_t> first_failing;  ///< 0-based coordinate
};

/// propA carries both the trace and the partition.
struct PropACertificate {
  InequalityTrace trace;
  PartitionCertificate partition;
};

using Certificate = std::variant<InequalityTrace, PropACertificate, TypeRSWitness>;

struct TheoremVerdict {
  TheoremId theorem_id = TheoremId::propA;
  bool holds = false;
  /// Set when a bounded search gave up; holds is then false.
  bool inconclusive = false;
  /// The verdict concerns a conjectured statement, not a proved one.
  bool conjectural = false;
  std::optional<Certificate> certificate;
  std::string conclusion_text;
};

inline constexpr const char* kNotEstablished = "hypothesis not established";

namespace detail {

inline InequalityTrace trace_against(std::span<const MarkedDiagram> ds, Coeff factor) {
  InequalityTrace t;
  t.sum = sum(ds).coeffs();
  t.threshold.assign(t.sum.size(), factor);
  for (std::size_t i = 0; i < t.sum.size(); ++i) {
    if (t.sum[i] < factor) {
      t.first_failing = i;
      break;
    }
  }
  return t;
}

inline void require_input(std::span<const MarkedDiagram> ds, const char* op) {
  require_common(ds, DiagramMode::counting, op);
}

}  // namespace detail

/// sum >= 12 * rank * full implies the product of the normal subsets is G.
inline TheoremVerdict check_prop_A(std::span<const MarkedDiagram> ds) {
  detail::require_input(ds, "check_prop_A");
  const auto full = full_diagram(ds.front().system_ptr(), DiagramMode::counting);
  for (const auto& d : ds) {
    if (!geq(full, d)) throw PreconditionFailed("check_prop_A: class diagrams have entries 0 or 1, got " + d.str());
  }
  const auto rank = static_cast<Coeff>(ds.front().rank());
  TheoremVerdict v;
  v.theorem_id = TheoremId::propA;
  auto trace = detail::trace_against(ds, 12 * rank);
  v.holds = !trace.first_failing;
  if (v.holds) {
    v.certificate = PropACertificate{std::move(trace), partition_regular(ds, 12)};
    v.conclusion_text = "N_1...N_k = G";
  } else {
    v.certificate = std::move(trace);
    v.conclusion_text = kNotEstablished;
  }
  return v;
}

/// Type (r,6) with regular anchor sum implies dim of the product is dim G.
inline TheoremVerdict check_prop_B(std::span<const MarkedDiagram> ds) {
  detail::require_input(ds, "check_prop_B");
  TheoremVerdict v;
  v.theorem_id = TheoremId::propB;
  for (std::size_t r = 1; r * 6 <= ds.size(); ++r) {
    auto search = find_type_rs(ds, r, 6, true);
    if (search.witness) {
      v.holds = true;
      v.inconclusive = false;
      v.certificate = std::move(*search.witness);
      v.conclusion_text = "dim N_1...N_k = dim G";
      return v;
    }
    if (!search.exhaustive) v.inconclusive = true;
  }
  v.conclusion_text = v.inconclusive ? std::string(kNotEstablished) + " (search inconclusive)" : kNotEstablished;
  return v;
}

/// sum >= 16 * full implies the product contains regular semisimple elements.
inline TheoremVerdict check_thm_C(std::span<const MarkedDiagram> ds) {
  detail::require_input(ds, "check_thm_C");
  TheoremVerdict v;
  v.theorem_id = TheoremId::thmC;
  auto trace = detail::trace_against(ds, 16);
  v.holds = !trace.first_failing;
  v.certificate = std::move(trace);
  v.conclusion_text = v.holds ? "N_1...N_k contains regular semisimple elements" : kNotEstablished;
  return v;
}

/// A regular sum implies the product is U-regular.
inline TheoremVerdict check_sum_to_regular(std::span<const MarkedDiagram> ds) {
  detail::require_input(ds, "check_sum_to_regular");
  TheoremVerdict v;
  v.theorem_id = TheoremId::corSumToRegular;
  auto trace = detail::trace_against(ds, 1);
  v.holds = !trace.first_failing;
  v.certificate = std::move(trace);
  v.conclusion_text = v.holds ? "N_1...N_k is U-regular" : kNotEstablished;
  return v;
}

/// Open question: does sum >= c * full already force the product to be G?
/// Only the inequality is decided; the verdict is marked conjectural.
inline TheoremVerdict check_conjecture(std::span<const MarkedDiagram> ds, Coeff c) {
  detail::require_input(ds, "check_conjecture");
  if (c == 0) throw InvalidArgument("check_conjecture: c must be positive");
  TheoremVerdict v;
  v.theorem_id = TheoremId::conjecture;
  v.conjectural = true;
  auto trace = detail::trace_against(ds, c);
  v.holds = !trace.first_failing;
  v.certificate = std::move(trace);
  v.conclusion_text = v.holds ? "conjectural: N_1...N_k = G" : kNotEstablished;
  return v;
}

/// Re-checks a verdict's certificate using only diagram arithmetic and the
/// partition validators. Negative verdicts re-validate when their trace
/// really does fail.
inline bool revalidate(const TheoremVerdict& v, std::span<const MarkedDiagram> ds) {
  if (!v.certificate) return !v.holds;
  const auto check_trace = [&](const InequalityTrace& t, Coeff expected) {
    const auto s = sum(ds).coeffs();
    if (t.sum != s || t.threshold != std::vector<Coeff>(s.size(), expected)) return false;
    std::optional<std::size_t> failing;
    for (std::size_t i = 0; i < s.size() && !failing; ++i) {
      if (s[i] < expected) failing = i;
    }
    return failing == t.first_failing && v.holds == !failing.has_value();
  };
  const auto rank = static_cast<Coeff>(ds.front().rank());
  switch (v.theorem_id) {
    case TheoremId::propA:
      if (const auto* c = std::get_if<PropACertificate>(&*v.certificate)) {
        return v.holds && check_trace(c->trace, 12 * rank) && c->partition.blocks.size() == 12 &&
               revalidate(c->partition, ds);
      }
      if (const auto* t = std::get_if<InequalityTrace>(&*v.certificate)) return !v.holds && check_trace(*t, 12 * rank);
      return false;
    case TheoremId::propB:
      if (const auto* w = std::get_if<TypeRSWitness>(&*v.certificate)) {
        return v.holds && w->s == 6 && revalidate(*w, ds, true);
      }
      return false;
    case TheoremId::thmC:
      if (const auto* t = std::get_if<InequalityTrace>(&*v.certificate)) return check_trace(*t, 16);
      return false;
    case TheoremId::corSumToRegular:
      if (const auto* t = std::get_if<InequalityTrace>(&*v.certificate)) return check_trace(*t, 1);
      return false;
    case TheoremId::conjecture:
      if (const auto* t = std::get_if<InequalityTrace>(&*v.certificate)) {
        return !t->threshold.empty() && check_trace(*t, t->threshold.front());
      }
      return false;
  }
  return false;
}

}  // namespace mdiag
