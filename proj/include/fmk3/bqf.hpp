#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fmk3/lattice.hpp"

namespace fmk3 {

// Integral binary quadratic form a x^2 + b xy + c y^2 of positive non-square
// discriminant b^2 - 4ac. All square-root comparisons below are done by
// squaring; no floating point.
struct BinaryQuadraticForm {
  Int a, b, c;

  Int discriminant() const { return b * b - 4 * a * c; }

  friend bool operator==(const BinaryQuadraticForm&,
                         const BinaryQuadraticForm&) = default;
  friend bool operator<(const BinaryQuadraticForm& f,
                        const BinaryQuadraticForm& g) {
    if (f.a != g.a) return f.a < g.a;
    if (f.b != g.b) return f.b < g.b;
    return f.c < g.c;
  }
};

inline bool is_valid_discriminant(const Int& d) {
  if (d <= 0 || is_perfect_square(d)) return false;
  Int m = mod_euclid(d, 4);
  return m == 0 || m == 1;
}

inline void require_indefinite(const BinaryQuadraticForm& f) {
  require(f.a != 0, "binary quadratic form: a must be nonzero");
  const Int d = f.discriminant();
  require(d > 0, "binary quadratic form: discriminant must be positive");
  require(!is_perfect_square(d),
          "binary quadratic form: discriminant must not be a square");
}

inline bool is_primitive(const BinaryQuadraticForm& f) {
  return gcd_int(gcd_int(f.a, f.b), f.c) == 1;
}

// Reduced indefinite form: |sqrt(D) - 2|a|| < b < sqrt(D), checked as
// b > 0, b^2 < D, (2|a| - b)^2 < D, D < (2|a| + b)^2.
inline bool is_reduced(const BinaryQuadraticForm& f) {
  require_indefinite(f);
  const Int d = f.discriminant();
  if (f.b <= 0) return false;
  if (f.b * f.b >= d) return false;
  const Int ta = 2 * abs_int(f.a);
  if ((ta - f.b) * (ta - f.b) >= d) return false;
  if (d >= (ta + f.b) * (ta + f.b)) return false;
  return true;
}

// Reduction neighbor (c, b', c') with b' = -b mod 2c, where b' is the largest
// residue below sqrt(D) when |c| < sqrt(D) and the residue nearest zero
// (favoring positive) otherwise. Repeated application reaches a reduced form
// and then walks its cycle.
inline BinaryQuadraticForm rho_step(const BinaryQuadraticForm& f) {
  require_indefinite(f);
  require(f.c != 0, "rho_step: c = 0 (square discriminant)");
  const Int d = f.discriminant();
  const Int root = isqrt(d);  // floor, and sqrt(D) irrational here
  const Int tc = 2 * abs_int(f.c);
  Int bp;
  if (abs_int(f.c) <= root) {
    // largest b' = -b (mod 2|c|) with b' <= floor(sqrt(D))
    bp = root - mod_euclid(root + f.b, tc);
  } else {
    // representative of -b in (-|c|, |c|]
    bp = mod_euclid(-f.b, tc);
    if (bp > abs_int(f.c)) bp -= tc;
  }
  const Int cp = (bp * bp - d) / (4 * f.c);
  return BinaryQuadraticForm{f.c, bp, cp};
}

// Full period of reduced forms through f (f is reduced first), rotated to
// start at its lexicographically least member.
inline std::vector<BinaryQuadraticForm> cycle(const BinaryQuadraticForm& f) {
  require_indefinite(f);
  BinaryQuadraticForm g = f;
  // reduction is logarithmic in the coefficient size
  const std::size_t guard =
      10 * (boost::multiprecision::msb(abs_int(f.a) + 1) +
            boost::multiprecision::msb(abs_int(f.c) + 1) +
            boost::multiprecision::msb(f.discriminant()) + 4);
  std::size_t steps = 0;
  while (!is_reduced(g)) {
    g = rho_step(g);
    require(++steps <= guard, "cycle: reduction failed to terminate");
  }
  std::vector<BinaryQuadraticForm> period;
  const Int period_guard = 10 * f.discriminant() + 100;
  BinaryQuadraticForm h = g;
  do {
    period.push_back(h);
    h = rho_step(h);
    require(Int(period.size()) <= period_guard, "cycle: period failed to close");
  } while (!(h == g));
  auto least = std::min_element(period.begin(), period.end());
  std::rotate(period.begin(), least, period.end());
  return period;
}

// All reduced primitive forms of discriminant d: b runs over 1..isqrt(d) with
// b^2 = d mod 4, and a over the divisors (both signs) of (d - b^2)/4.
inline std::vector<BinaryQuadraticForm> reduced_forms(const Int& d) {
  require(is_valid_discriminant(d), "reduced_forms: invalid discriminant");
  std::vector<BinaryQuadraticForm> out;
  for (Int b = 1; b * b < d; ++b) {
    if (mod_euclid(b * b - d, 4) != 0) continue;
    const Int ac = (b * b - d) / 4;  // negative
    const Int mag = -ac;
    for (Int a = 1; a * a <= mag; ++a) {
      if (mag % a != 0) continue;
      const Int c = ac / a;
      for (const auto& [aa, cc] : {std::pair<Int, Int>{a, c},
                                   std::pair<Int, Int>{-a, -c},
                                   std::pair<Int, Int>{-c, -a},
                                   std::pair<Int, Int>{c, a}}) {
        BinaryQuadraticForm f{aa, b, cc};
        if (!is_primitive(f)) continue;
        if (!is_reduced(f)) continue;
        if (std::find(out.begin(), out.end(), f) == out.end())
          out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Number of proper (SL2) classes of primitive forms of discriminant d:
// reduced forms partition into rho-cycles, one cycle per class.
inline long long narrow_class_number(const Int& d) {
  const auto forms = reduced_forms(d);
  std::vector<bool> used(forms.size(), false);
  long long classes = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (used[i]) continue;
    ++classes;
    for (const auto& g : cycle(forms[i])) {
      auto it = std::lower_bound(forms.begin(), forms.end(), g);
      require(it != forms.end() && *it == g,
              "narrow_class_number: cycle left the reduced-form list");
      used[static_cast<std::size_t>(it - forms.begin())] = true;
    }
  }
  return classes;
}

// Fundamental solution of x^2 - D y^2 = +-4 (minimal y; norm -1 preferred at
// equal y). norm_sign reports the sign solved.
struct PellSolution {
  Int x, y;
  int norm_sign;

  friend bool operator==(const PellSolution&, const PellSolution&) = default;
};

namespace detail {

// Minimal solution of t^2 - m u^2 = +-1 via the continued fraction of
// sqrt(m); the achieved sign is (-1)^period.
inline PellSolution pell_unit(const Int& m) {
  const Int a0 = isqrt(m);
  require(a0 * a0 != m, "pell_unit: square argument");
  Int mm = 0, dd = 1, a = a0;
  Int h_prev = 1, h = a0, k_prev = 0, k = 1;
  int parity = -1;  // (-1)^1 after consuming a0
  while (true) {
    mm = dd * a - mm;
    dd = (m - mm * mm) / dd;
    a = (a0 + mm) / dd;
    if (dd == 1) break;  // period closes on the next term
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    parity = -parity;
  }
  return PellSolution{h, k, parity};
}

}  // namespace detail

inline PellSolution pell_fundamental(const Int& d) {
  require(is_valid_discriminant(d), "pell_fundamental: invalid discriminant");
  if (d % 4 == 0) {
    // x is forced even: (x/2)^2 - (d/4) y^2 = +-1
    PellSolution u = detail::pell_unit(d / 4);
    return PellSolution{2 * u.x, u.y, u.norm_sign};
  }
  PellSolution u = detail::pell_unit(d);
  if (mod_euclid(d, 8) == 5) {
    // Solutions with x, y odd may undercut (2t, 2u); they come from a unit
    // whose cube is t + u sqrt(d), so y is at most cbrt(t + u*ceil(sqrt d)).
    const Int y_max = icbrt(u.x + u.y * (isqrt(d) + 1)) + 1;
    for (Int y = 1; y <= y_max; y += 2) {
      if (y >= 2 * u.y) break;
      const Int dy2 = d * y * y;
      if (is_perfect_square(dy2 - 4)) return PellSolution{isqrt(dy2 - 4), y, -1};
      if (is_perfect_square(dy2 + 4)) return PellSolution{isqrt(dy2 + 4), y, 1};
    }
  }
  return PellSolution{2 * u.x, 2 * u.y, u.norm_sign};
}

inline bool is_fundamental_discriminant(const Int& d) {
  if (!is_valid_discriminant(d)) return false;
  auto squarefree = [](const Int& n) {
    for (Int p = 2; p * p <= n; ++p)
      if (n % (p * p) == 0) return false;
    return true;
  };
  if (mod_euclid(d, 4) == 1) return squarefree(d);
  const Int m = d / 4;
  const Int r = mod_euclid(m, 4);
  return (r == 2 || r == 3) && squarefree(m);
}

// Ideal class number of the real quadratic field of fundamental discriminant
// d: equals the narrow class number when the fundamental unit has norm -1,
// and half of it otherwise.
inline long long wide_class_number(const Int& d) {
  require(is_fundamental_discriminant(d),
          "wide_class_number: discriminant must be fundamental");
  const long long narrow = narrow_class_number(d);
  if (pell_fundamental(d).norm_sign == -1) return narrow;
  require(narrow % 2 == 0,
          "wide_class_number: narrow class number not even with norm +1 unit");
  return narrow / 2;
}

// Even rank-2 lattice [[2a, b], [b, 2c]] of the form; determinant -disc(f).
inline IntegerLattice form_to_lattice(const BinaryQuadraticForm& f) {
  IntMatrix g(2, 2);
  g(0, 0) = 2 * f.a;
  g(0, 1) = f.b;
  g(1, 0) = f.b;
  g(1, 1) = 2 * f.c;
  return IntegerLattice(std::move(g));
}

enum class UnimodularGroup { sl2, gl2 };

// Independent equivalence oracle: searches integer changes of variable
// [[p, q], [r, s]] with det +1 (or +-1 in gl2 mode) and all entries bounded
// by coeff_bound for one carrying f to g. Deliberately ignorant of reduction
// theory. (p, r) are enumerated; (q, s) are solved exactly from the
// determinant and middle-coefficient conditions.
inline bool brute_equiv_oracle(const BinaryQuadraticForm& f,
                               const BinaryQuadraticForm& g,
                               const Int& coeff_bound,
                               UnimodularGroup group = UnimodularGroup::sl2) {
  require(f.discriminant() == g.discriminant(),
          "brute_equiv_oracle: discriminants differ");
  require(coeff_bound >= 1, "brute_equiv_oracle: bound must be positive");
  std::vector<int> dets{1};
  if (group == UnimodularGroup::gl2) dets.push_back(-1);

  for (Int p = -coeff_bound; p <= coeff_bound; ++p)
    for (Int r = -coeff_bound; r <= coeff_bound; ++r) {
      if (f.a * p * p + f.b * p * r + f.c * r * r != g.a) continue;
      if (gcd_int(p, r) != 1) continue;  // no unimodular completion otherwise
      // Bezout for (|p|, |r|): |p|*u + |r|*v = 1
      Int old_r = abs_int(p), rem = abs_int(r);
      Int u = 1, uu = 0, v = 0, vv = 1;
      while (rem != 0) {
        const Int quo = old_r / rem;
        Int tmp = old_r - quo * rem;
        old_r = rem;
        rem = tmp;
        tmp = u - quo * uu;
        u = uu;
        uu = tmp;
        tmp = v - quo * vv;
        v = vv;
        vv = tmp;
      }
      // p*s_base - r*q_base = 1
      const Int s_base = (p < 0) ? Int(-u) : u;
      const Int q_base = (r < 0) ? v : Int(-v);
      for (int det : dets) {
        // p*s - r*q = det; family q = det*q_base + t*p, s = det*s_base + t*r
        const Int q0 = det * q_base, s0 = det * s_base;
        // middle coefficient is linear in t with slope 2*g.a (nonzero)
        const Int b_at_0 =
            2 * f.a * p * q0 + f.b * (p * s0 + q0 * r) + 2 * f.c * r * s0;
        const Int slope = 2 * g.a;
        if (mod_euclid(g.b - b_at_0, abs_int(slope)) != 0) continue;
        const Int t = (g.b - b_at_0) / slope;
        const Int q = q0 + t * p, s = s0 + t * r;
        if (abs_int(q) > coeff_bound || abs_int(s) > coeff_bound) continue;
        if (f.a * q * q + f.b * q * s + f.c * s * s != g.c) continue;
        return true;
      }
    }
  return false;
}

}  // namespace fmk3
