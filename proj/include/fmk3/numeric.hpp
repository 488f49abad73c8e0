#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace fmk3 {

// Arbitrary-precision integers and exact rationals. Floating point is never
// used anywhere in this library; every comparison against an irrational
// quantity (square roots of discriminants etc.) is done by squaring.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

// Floor division (rounds toward -inf), b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Representative of a mod m in [0, |m|), m != 0.
inline Int mod_euclid(const Int& a, const Int& m) {
  Int mm = abs_int(m);
  Int r = a % mm;
  if (r < 0) r += mm;
  return r;
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat_floor(const Rat& r) {
  return Rat(floor_div(rat_num(r), rat_den(r)));
}

// Canonical representative of r in Q/Z: reduced fraction in [0, 1).
inline Rat mod1(const Rat& r) { return r - rat_floor(r); }

// Canonical representative of r in Q/2Z: reduced fraction in [0, 2).
inline Rat mod2z(const Rat& r) {
  Rat half = r / 2;
  return (half - rat_floor(half)) * 2;
}

inline bool is_integral(const Rat& r) { return rat_den(r) == 1; }

// Floor of sqrt(n), n >= 0.
inline Int isqrt(const Int& n) {
  require(n >= 0, "isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

// Floor of the real cube root, n >= 0.
inline Int icbrt(const Int& n) {
  require(n >= 0, "icbrt: negative argument");
  if (n == 0) return 0;
  Int x = Int(1) << static_cast<unsigned>((boost::multiprecision::msb(n) / 3) + 1);
  while (true) {
    Int y = (2 * x + n / (x * x)) / 3;
    if (y >= x) break;
    x = y;
  }
  while (x * x * x > n) --x;
  while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
  return x;
}

inline Int pow2(unsigned e) { return Int(1) << e; }

}  // namespace fmk3
