#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/finite_group.hpp"
#include "mdiag/theorem_checker.hpp"

namespace mdiag {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
/// Counterexamples kept verbatim in a report; the rest are only counted.
inline constexpr std::size_t kMaxCounterexamples = 8;

/// Outcome of one verification sweep. Violations over F_p are findings about
/// the finite shadow, not errors.
struct LabReport {
  std::string check;
  bool holds = true;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> counterexamples;
  std::optional<std::string> witness;
  std::map<std::string, std::int64_t> metrics;
  int n = 0;
  std::uint32_t p = 0;
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

inline LabReport start_report(const FiniteGroupContext& g, const char* check, std::uint64_t seed) {
  LabReport r;
  r.check = check;
  r.n = g.n();
  r.p = g.p();
  r.seed = seed;
  return r;
}

inline void record_violation(LabReport& r, const std::string& what) {
  ++r.violations;
  if (r.counterexamples.size() < kMaxCounterexamples) r.counterexamples.push_back(what);
}

inline std::string mask_str(std::uint32_t mask, int rank) {
  std::string s = "[";
  for (int i = 0; i < rank; ++i) s += (i ? "," : "") + std::to_string((mask >> i) & 1U);
  return s + "]";
}

inline std::vector<std::size_t> classes_where(const FiniteGroupContext& g, bool ConjClassRecord::*flag) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    if (g.classes()[c].*flag) out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// U * U^{w0} * U * U^{w0} = G, with U^{w0} = w0^{-1} U w0.
inline LabReport verify_uuuu(const FiniteGroupContext& g, std::uint64_t seed = kDefaultSeed) {
  auto r = detail::start_report(g, "uuuu", seed);
  const Matrix w = g.element(g.w0());
  const Matrix w_inv = w.inverse();
  ElementSet u_w(g.order());
  for (auto u : g.unipotent().members()) u_w.insert(g.id_of(w_inv * g.element(u) * w));
  const ElementSet uuw = set_product(g, g.unipotent(), u_w);
  const ElementSet s = set_product(g, set_product(g, uuw, g.unipotent()), u_w);
  r.checked = g.order();
  r.metrics["u_size"] = static_cast<std::int64_t>(g.unipotent().size());
  r.metrics["u_uw_size"] = static_cast<std::int64_t>(uuw.size());
  r.metrics["product_size"] = static_cast<std::int64_t>(s.size());
  r.metrics["missing"] = static_cast<std::int64_t>(g.order() - s.size());
  for (ElementId x = 0; x < g.order(); ++x) {
    if (!s.contains(x)) detail::record_violation(r, "missing " + g.element(x).str());
  }
  r.holds = r.violations == 0;
  return r;
}

/// For all ordered class pairs and (D1, D2) in D(C1) x D(C2):
/// D1 boxplus D2 lies in D(C1 C2).
inline LabReport verify_boxplus(const FiniteGroupContext& g, std::uint64_t seed = kDefaultSeed) {
  auto r = detail::start_report(g, "boxplus", seed);
  const auto& cls = g.classes();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (std::size_t j = 0; j < cls.size(); ++j) {
      std::set<std::uint32_t> product_diagrams;
      for (auto k : g.class_product(i, j)) product_diagrams.insert(cls[k].diagram_set.begin(), cls[k].diagram_set.end());
      for (auto d1 : cls[i].diagram_set) {
        for (auto d2 : cls[j].diagram_set) {
          ++r.checked;
          if (!product_diagrams.count(d1 | d2)) {
            detail::record_violation(r, "classes " + std::to_string(i) + "," + std::to_string(j) + ": " +
                                            detail::mask_str(d1, g.n() - 1) + " boxplus " +
                                            detail::mask_str(d2, g.n() - 1) + " not in D(C1 C2)");
          }
        }
      }
    }
  }
  r.metrics["classes"] = static_cast<std::int64_t>(cls.size());
  r.holds = r.violations == 0;
  return r;
}

/// u in U is regular (one Jordan block) iff every simple coordinate is non-zero.
inline LabReport verify_regular_support(const FiniteGroupContext& g, std::uint64_t seed = kDefaultSeed) {
  auto r = detail::start_report(g, "regular-support", seed);
  const std::uint32_t full = (std::uint32_t{1} << (g.n() - 1)) - 1;
  for (auto id : g.unipotent().members()) {
    const Matrix u = g.element(id);
    ++r.checked;
    const bool regular = g.sl().is_regular_unipotent(u);
    const bool full_support = g.sl().diagram_mask(u) == full;
    if (regular != full_support) detail::record_violation(r, u.str());
  }
  r.holds = r.violations == 0;
  return r;
}

/// (a) every u in U with full support has a T-conjugate with all simple
/// coordinates 1; (b) for s in T and u = prod_{i in supp(s)} u_i(x_i),
/// supp([s,u]) = supp(u) with [s,u] = s^-1 u^-1 s u.
inline LabReport verify_torus_orbit(const FiniteGroupContext& g, std::uint64_t seed = kDefaultSeed) {
  auto r = detail::start_report(g, "torus-orbit", seed);
  const int n = g.n();
  const fp::Elem p = g.p();
  const std::uint32_t full = (std::uint32_t{1} << (n - 1)) - 1;
  const auto torus = g.torus().members();
  std::int64_t a_checked = 0, a_bad = 0, b_checked = 0, b_bad = 0;
  for (auto id : g.unipotent().members()) {
    const Matrix u = g.element(id);
    if (g.sl().diagram_mask(u) != full) continue;
    ++a_checked;
    bool ok = false;
    for (auto t : torus) {
      const Matrix tm = g.element(t);
      const Matrix c = tm * u * tm.inverse();
      bool ones = true;
      for (int i = 0; i + 1 < n && ones; ++i) ones = c(i, i + 1) == 1;
      if (ones) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      ++a_bad;
      detail::record_violation(r, "(a) no T-conjugate of " + u.str() + " has unit simple coordinates");
    }
  }
  for (auto sid : torus) {
    const Matrix s = g.element(sid);
    std::vector<int> supp;
    for (int i = 0; i + 1 < n; ++i) {
      if (s(i, i) != s(i + 1, i + 1)) supp.push_back(i);
    }
    std::vector<fp::Elem> xs(supp.size(), 0);
    for (;;) {
      Matrix u = g.sl().identity();
      for (std::size_t k = 0; k < supp.size(); ++k) u = u * Matrix::elementary(n, p, supp[k], supp[k] + 1, xs[k]);
      const Matrix comm = s.inverse() * u.inverse() * s * u;
      ++b_checked;
      if (g.sl().diagram_mask(comm) != g.sl().diagram_mask(u)) {
        ++b_bad;
        detail::record_violation(r, "(b) supp([s,u]) != supp(u) for s=" + s.str() + " u=" + u.str());
      }
      std::size_t k = 0;
      while (k < xs.size() && ++xs[k] == p) xs[k++] = 0;
      if (k == xs.size()) break;
    }
  }
  r.checked = static_cast<std::uint64_t>(a_checked + b_checked);
  r.metrics["a_checked"] = a_checked;
  r.metrics["a_violations"] = a_bad;
  r.metrics["b_checked"] = b_checked;
  r.metrics["b_violations"] = b_bad;
  r.holds = r.violations == 0;
  return r;
}

/// For g in B whose semisimple part lies in T, and each subset D_s of
/// supp(g_s): the B-orbit of g contains g_s u(D) c with supp(D) = D_s cup
/// supp(g_u) and c in [U,U]. `sample` > 0 restricts to that many random g.
inline LabReport verify_su_reg(const FiniteGroupContext& g, std::uint64_t seed = kDefaultSeed, std::size_t sample = 0) {
  auto r = detail::start_report(g, "su-reg", seed);
  const int n = g.n();
  auto borel = g.borel().members();
  std::vector<Matrix> borel_m, borel_inv;
  for (auto b : borel) {
    borel_m.push_back(g.element(b));
    borel_inv.push_back(g.element(g.inverse(b)));
  }
  std::vector<std::size_t> chosen(borel.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
  if (sample > 0 && sample < chosen.size()) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < sample; ++i) std::swap(chosen[i], chosen[i + rng() % (chosen.size() - i)]);
    chosen.resize(sample);
    std::sort(chosen.begin(), chosen.end());
  }
  std::int64_t total = 0, covered = 0, elements = 0;
  for (auto idx : chosen) {
    const Matrix& gm = borel_m[idx];
    const auto [gs, gu] = g.sl().jordan_parts(gm);
    if (!gs.is_diagonal()) continue;
    ++elements;
    const Matrix gs_inv = gs.inverse();
    std::vector<int> supp_s;
    for (int a = 0; a + 1 < n; ++a) {
      if (gs(a, a) != gs(a + 1, a + 1)) supp_s.push_back(a);
    }
    const std::uint32_t supp_u = g.sl().diagram_mask(gu);
    // Simple-coordinate masks reachable as g_s^-1 b g b^-1 with that element in U
    // and all simple coordinates in {0, 1}.
    std::set<std::uint32_t> reachable;
    for (std::size_t b = 0; b < borel_m.size(); ++b) {
      const Matrix v = gs_inv * borel_m[b] * gm * borel_inv[b];
      if (!v.is_unipotent_upper()) continue;
      bool unit = true;
      for (int a = 0; a + 1 < n && unit; ++a) unit = v(a, a + 1) <= 1;
      if (unit) reachable.insert(g.sl().diagram_mask(v));
    }
    for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << supp_s.size()); ++sub) {
      std::uint32_t target = supp_u;
      for (std::size_t k = 0; k < supp_s.size(); ++k) {
        if (sub >> k & 1U) target |= std::uint32_t{1} << supp_s[k];
      }
      ++total;
      if (reachable.count(target)) {
        ++covered;
      } else {
        detail::record_violation(r, "g=" + gm.str() + " target " + detail::mask_str(target, n - 1));
      }
    }
  }
  r.checked = static_cast<std::uint64_t>(total);
  r.metrics["elements"] = elements;
  r.metrics["targets"] = total;
  r.metrics["covered"] = covered;
  r.holds = r.violations == 0;
  return r;
}

namespace detail {

inline void next_multiset(std::vector<std::size_t>& idx, std::size_t m, bool& done) {
  std::size_t k = idx.size();
  while (k > 0 && idx[k - 1] == m - 1) --k;
  if (k == 0) {
    done = true;
    return;
  }
  const std::size_t v = idx[k - 1] + 1;
  for (std::size_t j = k - 1; j < idx.size(); ++j) idx[j] = v;
}

inline std::uint64_t multiset_count(std::uint64_t m, std::uint64_t k) {
  // C(m + k - 1, k), saturating.
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (m + k - i) / i;
    if (c > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace detail

inline constexpr std::uint64_t kSixTupleExhaustiveBudget = 200000;

/// Every product of six U-regular classes contains all regular semisimple
/// classes. Exhaustive over multisets of classes when `sample` is 0 and the
/// count fits the budget, otherwise `sample` random multisets (default 1000).
inline LabReport verify_six_uregular(const FiniteGroupContext& g, std::uint64_t seed = kDefaultSeed, std::size_t sample = 0) {
  auto r = detail::start_report(g, "six-uregular", seed);
  const auto ureg = detail::classes_where(g, &ConjClassRecord::is_U_regular);
  const auto rss = detail::classes_where(g, &ConjClassRecord::contains_regular_semisimple);
  r.metrics["uregular_classes"] = static_cast<std::int64_t>(ureg.size());
  r.metrics["regular_semisimple_classes"] = static_cast<std::int64_t>(rss.size());
  if (ureg.empty()) {
    r.holds = true;
    return r;
  }
  const auto check = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> tuple;
    for (auto i : idx) tuple.push_back(ureg[i]);
    const auto prod = g.product_of_classes(tuple);
    ++r.checked;
    for (auto c : rss) {
      if (!std::binary_search(prod.begin(), prod.end(), c)) {
        std::string what = "classes {";
        for (std::size_t k = 0; k < tuple.size(); ++k) what += (k ? "," : "") + std::to_string(tuple[k]);
        detail::record_violation(r, what + "} miss regular semisimple class " + std::to_string(c));
        return;
      }
    }
  };
  const std::uint64_t total = detail::multiset_count(ureg.size(), 6);
  r.metrics["tuples_total"] = static_cast<std::int64_t>(std::min<std::uint64_t>(total, INT64_MAX));
  if (sample == 0 && total <= kSixTupleExhaustiveBudget) {
    r.metrics["exhaustive"] = 1;
    std::vector<std::size_t> idx(6, 0);
    bool done = false;
    while (!done) {
      check(idx);
      detail::next_multiset(idx, ureg.size(), done);
    }
  } else {
    r.metrics["exhaustive"] = 0;
    std::mt19937_64 rng(seed);
    const std::size_t k = sample == 0 ? 1000 : sample;
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<std::size_t> idx(6);
      for (auto& i : idx) i = static_cast<std::size_t>(rng() % ureg.size());
      std::sort(idx.begin(), idx.end());
      check(idx);
    }
  }
  r.metrics["tuples_failing"] = static_cast<std::int64_t>(r.violations);
  r.holds = r.violations == 0;
  return r;
}

/// Finite shadow of the 16 * full criterion: the product of the given classes
/// contains a regular semisimple element. diagrams[i] must lie in D(classes[i])
/// and the diagram list must satisfy the inequality.
inline LabReport verify_thm_C_shadow(const FiniteGroupContext& g, const std::vector<std::size_t>& classes,
                                     const std::vector<MarkedDiagram>& diagrams, std::uint64_t seed = kDefaultSeed) {
  if (classes.size() != diagrams.size() || classes.empty()) {
    throw InvalidArgument("verify_thm_C_shadow needs one diagram per class");
  }
  std::vector<MarkedDiagram> counting;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] >= g.classes().size()) throw InvalidArgument("class index out of range");
    const auto& d = diagrams[i];
    if (d.rank() != static_cast<std::size_t>(g.n() - 1)) throw InvalidArgument("diagram rank does not match SL_n");
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < d.rank(); ++k) {
      if (d[k] > 1) throw PreconditionFailed(std::string(kNotEstablished) + ": class diagrams are binary");
      if (d[k]) mask |= std::uint32_t{1} << k;
    }
    if (!g.classes()[classes[i]].diagram_set.count(mask)) {
      throw PreconditionFailed(std::string(kNotEstablished) + ": diagram " + d.str() + " is not in D(C_" +
                               std::to_string(classes[i]) + ")");
    }
    counting.push_back(d.with_mode(DiagramMode::counting));
  }
  const auto verdict = check_thm_C(counting);
  if (!verdict.holds) {
    throw PreconditionFailed(std::string(kNotEstablished) + ": diagram sum " + sum(counting).str() + " is not >= 16");
  }
  auto r = detail::start_report(g, "thmC", seed);
  const auto prod = g.product_of_classes(classes);
  r.checked = prod.size();
  r.metrics["factors"] = static_cast<std::int64_t>(classes.size());
  r.metrics["product_classes"] = static_cast<std::int64_t>(prod.size());
  for (auto c : prod) {
    if (g.classes()[c].contains_regular_semisimple) {
      r.witness = g.element(g.classes()[c].representative).str();
      break;
    }
  }
  if (!r.witness) detail::record_violation(r, "no regular semisimple element in the product");
  r.holds = r.witness.has_value();
  return r;
}

/// The class of u(D) for the fully marked D, repeated `copies` times, with
/// the full diagram attached to each copy.
inline LabReport verify_thm_C_regular_unipotent(const FiniteGroupContext& g, std::size_t copies,
                                                std::uint64_t seed = kDefaultSeed) {
  const auto full = full_diagram(g.sl().system(), DiagramMode::binary);
  const auto c = g.class_of(g.id_of(g.sl().u_of(full)));
  return verify_thm_C_shadow(g, std::vector<std::size_t>(copies, c), std::vector<MarkedDiagram>(copies, full), seed);
}

}  // namespace mdiag
