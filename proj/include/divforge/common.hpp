#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace divforge {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Raised when an operation's stated preconditions are violated (CLI exit 1).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an internal invariant fails; indicates a bug (CLI exit 2).
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw precondition_error(msg);
}

inline void check(bool ok, const std::string& msg) {
  if (!ok) throw invariant_error("internal invariant violated: " + msg);
}

inline Int ipow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Largest t with t*t <= v.  v >= 0.
inline Int isqrt(const Int& v) {
  require(v >= 0, "isqrt of negative value");
  return boost::multiprecision::sqrt(v);
}

inline int sign_of(const Rat& v) {
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

// Exact sign of a - b*sqrt(s) for rationals a, b and integer s >= 0.
inline int cmp_rat_sqrt(const Rat& a, const Rat& b, const Int& s) {
  if (s == 0 || b == 0) return sign_of(a);
  if (b > 0 && a <= 0) return (a == 0 && b == 0) ? 0 : -1;
  if (b < 0 && a >= 0) return (a == 0 && b == 0) ? 0 : 1;
  // a and b share a sign; compare squares, flipping when both negative.
  Rat lhs = a * a, rhs = b * b * Rat(s);
  int c = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  return a > 0 ? c : -c;
}

// Exact sign of sqrt(d) - (a + b*sqrt(s)), d >= 0, s >= 0.
inline int cmp_sqrt_vs_affine(const Rat& d, const Rat& a, const Rat& b, const Int& s) {
  require(d >= 0, "cmp_sqrt_vs_affine needs d >= 0");
  int rsign = cmp_rat_sqrt(a, -b, s);  // sign of a + b*sqrt(s)
  if (rsign < 0) return 1;
  if (rsign == 0) return d > 0 ? 1 : 0;
  // Both sides nonnegative: compare d vs (a + b*sqrt(s))^2.
  return cmp_rat_sqrt(d - a * a - b * b * Rat(s), 2 * a * b, s);
}

inline Int binomial(const Int& n, unsigned k) {
  if (n < 0) throw precondition_error("binomial with negative n");
  if (Int(k) > n) return 0;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - Int(i - 1);
    r /= i;
  }
  return r;
}

// Floor of a rational (towards negative infinity).
inline Int rat_floor(const Rat& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  Int q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

}  // namespace divforge
