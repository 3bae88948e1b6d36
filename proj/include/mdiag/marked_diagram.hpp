#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mdiag/error.hpp"
#include "mdiag/root_system.hpp"

namespace mdiag {

/// Which monoid a diagram lives in: N_OR Delta ({0,1} under bitwise OR) or
/// N Delta (non-negative counts under addition).
enum class DiagramMode { binary, counting };

inline const char* to_string(DiagramMode m) { return m == DiagramMode::binary ? "binary" : "counting"; }

using Coeff = std::uint64_t;

/// A coefficient vector over the simple roots of a fixed root system.
class MarkedDiagram {
 public:
  MarkedDiagram(RootSystemPtr system, std::vector<Coeff> coeffs, DiagramMode mode = DiagramMode::counting)
      : system_(std::move(system)), coeffs_(std::move(coeffs)), mode_(mode) {
    if (!system_) throw InvalidArgument("diagram needs a root system");
    if (coeffs_.size() != static_cast<std::size_t>(system_->rank())) {
      throw InvalidArgument("diagram has " + std::to_string(coeffs_.size()) + " entries but " + system_->label() +
                            " has rank " + std::to_string(system_->rank()));
    }
    if (mode_ == DiagramMode::binary &&
        std::any_of(coeffs_.begin(), coeffs_.end(), [](Coeff c) { return c > 1; })) {
      throw InvalidArgument("binary diagram entries must be 0 or 1, got " + str());
    }
  }

  static MarkedDiagram zero(RootSystemPtr system, DiagramMode mode = DiagramMode::counting) {
    const auto r = static_cast<std::size_t>(system->rank());
    return MarkedDiagram(std::move(system), std::vector<Coeff>(r, 0), mode);
  }

  const RootSystem& system() const { return *system_; }
  const RootSystemPtr& system_ptr() const { return system_; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t rank() const { return coeffs_.size(); }
  DiagramMode mode() const { return mode_; }

  bool same_system(const MarkedDiagram& other) const {
    return system_->type() == other.system_->type() && system_->rank() == other.system_->rank();
  }

  /// The same coefficients viewed in the other monoid. Binary -> counting is
  /// the inclusion {0,1} in N; counting -> binary requires all entries <= 1
  /// (use psi() to collapse arbitrary counts).
  MarkedDiagram with_mode(DiagramMode mode) const { return MarkedDiagram(system_, coeffs_, mode); }

  friend bool operator==(const MarkedDiagram& a, const MarkedDiagram& b) {
    return a.same_system(b) && a.mode_ == b.mode_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + std::to_string(coeffs_[i]);
    return s + "]";
  }

 private:
  RootSystemPtr system_;
  std::vector<Coeff> coeffs_;
  DiagramMode mode_;
};

namespace detail {

inline void require_same_system(const MarkedDiagram& a, const MarkedDiagram& b, const char* op) {
  if (!a.same_system(b)) {
    throw ModeMismatch(std::string(op) + ": diagrams belong to " + a.system().label() + " and " +
                       b.system().label());
  }
}

inline void require_mode(const MarkedDiagram& d, DiagramMode mode, const char* op) {
  if (d.mode() != mode) {
    throw ModeMismatch(std::string(op) + " needs " + to_string(mode) + " diagrams, got " + to_string(d.mode()));
  }
}

}  // namespace detail

/// The diagram with every node marked.
inline MarkedDiagram full_diagram(RootSystemPtr rs, DiagramMode mode = DiagramMode::binary) {
  const auto r = static_cast<std::size_t>(rs->rank());
  return MarkedDiagram(std::move(rs), std::vector<Coeff>(r, 1), mode);
}

/// Entrywise OR in N_OR Delta.
inline MarkedDiagram boxplus(const MarkedDiagram& a, const MarkedDiagram& b) {
  detail::require_same_system(a, b, "boxplus");
  detail::require_mode(a, DiagramMode::binary, "boxplus");
  detail::require_mode(b, DiagramMode::binary, "boxplus");
  std::vector<Coeff> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] | b[i];
  return MarkedDiagram(a.system_ptr(), std::move(c), DiagramMode::binary);
}

/// Entrywise sum in N Delta.
inline MarkedDiagram add(const MarkedDiagram& a, const MarkedDiagram& b) {
  detail::require_same_system(a, b, "add");
  detail::require_mode(a, DiagramMode::counting, "add");
  detail::require_mode(b, DiagramMode::counting, "add");
  std::vector<Coeff> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return MarkedDiagram(a.system_ptr(), std::move(c), DiagramMode::counting);
}

/// a >= b in the entrywise partial order.
inline bool geq(const MarkedDiagram& a, const MarkedDiagram& b) {
  detail::require_same_system(a, b, "geq");
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

/// The monoid morphism N Delta -> N_OR Delta marking the non-zero entries.
inline MarkedDiagram psi(const MarkedDiagram& d) {
  detail::require_mode(d, DiagramMode::counting, "psi");
  std::vector<Coeff> c(d.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = d[i] != 0 ? 1 : 0;
  return MarkedDiagram(d.system_ptr(), std::move(c), DiagramMode::binary);
}

/// Marked nodes as sorted 0-based simple-root indices.
inline std::vector<int> support(const MarkedDiagram& d) {
  std::vector<int> out;
  for (std::size_t i = 0; i < d.rank(); ++i) {
    if (d[i] != 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

inline bool is_regular(const MarkedDiagram& d) {
  return std::all_of(d.coeffs().begin(), d.coeffs().end(), [](Coeff c) { return c != 0; });
}

inline MarkedDiagram scale(Coeff k, const MarkedDiagram& d) {
  detail::require_mode(d, DiagramMode::counting, "scale");
  std::vector<Coeff> c(d.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * d[i];
  return MarkedDiagram(d.system_ptr(), std::move(c), DiagramMode::counting);
}

/// Sum of a non-empty list of counting diagrams.
inline MarkedDiagram sum(std::span<const MarkedDiagram> ds) {
  if (ds.empty()) throw InvalidArgument("sum of an empty diagram list has no system");
  MarkedDiagram acc = MarkedDiagram::zero(ds.front().system_ptr());
  for (const auto& d : ds) acc = add(acc, d);
  return acc;
}

/// Checks that all diagrams share one system and the given mode.
inline void require_common(std::span<const MarkedDiagram> ds, DiagramMode mode, const char* op) {
  if (ds.empty()) throw InvalidArgument(std::string(op) + ": empty diagram list");
  for (const auto& d : ds) {
    detail::require_same_system(ds.front(), d, op);
    detail::require_mode(d, mode, op);
  }
}

}  // namespace mdiag
