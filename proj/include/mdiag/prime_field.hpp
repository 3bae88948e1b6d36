#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdiag/error.hpp"

namespace mdiag::fp {

using Elem = std::uint32_t;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (p > 65521) throw InvalidArgument("prime " + std::to_string(p) + " is too large for the lab");
}

inline Elem add(Elem a, Elem b, Elem p) { return static_cast<Elem>((std::uint64_t{a} + b) % p); }
inline Elem sub(Elem a, Elem b, Elem p) { return static_cast<Elem>((std::uint64_t{a} + p - b) % p); }
inline Elem mul(Elem a, Elem b, Elem p) { return static_cast<Elem>(std::uint64_t{a} * b % p); }
inline Elem neg(Elem a, Elem p) { return a == 0 ? 0 : p - a; }

inline Elem pow(Elem a, std::uint64_t e, Elem p) {
  std::uint64_t r = 1 % p;
  std::uint64_t b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Elem>(r);
}

inline Elem inv(Elem a, Elem p) {
  if (a % p == 0) throw InvalidArgument("zero has no inverse mod " + std::to_string(p));
  return pow(a, p - 2, p);
}

/// Reduces an arbitrary integer into [0, p).
inline Elem reduce(std::int64_t a, Elem p) {
  const std::int64_t m = a % static_cast<std::int64_t>(p);
  return static_cast<Elem>(m < 0 ? m + p : m);
}

/// Dense polynomial over F_p, coefficients low degree first, no trailing zeros.
using Poly = std::vector<Elem>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly derivative(const Poly& f, Elem p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mul(f[i], static_cast<Elem>(i % p), p));
  trim(d);
  return d;
}

/// Remainder of f modulo a non-zero g.
inline Poly mod(Poly f, const Poly& g, Elem p) {
  const Elem lead_inv = inv(g.back(), p);
  while (f.size() >= g.size()) {
    const Elem c = mul(f.back(), lead_inv, p);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = sub(f[shift + i], mul(c, g[i], p), p);
    trim(f);
  }
  return f;
}

inline Poly gcd(Poly a, Poly b, Elem p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// gcd(f, f') is a non-zero constant. A vanishing derivative means f is a
/// p-th power, hence not squarefree.
inline bool is_squarefree(const Poly& f, Elem p) {
  const Poly d = derivative(f, p);
  if (d.empty()) return degree(f) <= 0;
  return degree(gcd(f, d, p)) == 0;
}

}  // namespace mdiag::fp
