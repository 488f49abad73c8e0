#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "fmk3/numeric.hpp"

namespace fmk3 {

// (prime, exponent) pairs, primes ascending; empty for n = 1.
inline std::vector<std::pair<Int, int>> prime_factorization(Int n) {
  require(n >= 1, "prime_factorization: n must be positive");
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Number of distinct prime divisors. This is the exponent driving the
// partner-count formula 2^(tau - 1).
inline int num_prime_divisors(const Int& n) {
  return static_cast<int>(prime_factorization(n).size());
}

inline Int euler_phi(const Int& m) {
  require(m >= 1, "euler_phi: m must be positive");
  Int phi = m;
  for (const auto& [p, e] : prime_factorization(m)) phi = phi / p * (p - 1);
  return phi;
}

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  auto f = prime_factorization(n);
  return f.size() == 1 && f[0].second == 1;
}

// Coprime factorization n = r*s with r >= s >= 1; labels the moduli space of
// stable sheaves with Mukai vector (r, H, s) on a degree-2n K3 surface.
struct PartnerDescriptor {
  Int r, s, n;

  PartnerDescriptor(Int r_, Int s_, Int n_)
      : r(std::move(r_)), s(std::move(s_)), n(std::move(n_)) {
    require(r >= s && s >= 1 && r * s == n && gcd_int(r, s) == 1,
            "PartnerDescriptor: need rs = n, gcd(r,s) = 1, r >= s >= 1");
  }

  friend bool operator==(const PartnerDescriptor&, const PartnerDescriptor&) =
      default;
};

// All coprime ordered factorizations of n, sorted by descending r. The
// cardinality is 2^(tau(n)-1) for n >= 2 and 1 for n = 1.
inline std::vector<PartnerDescriptor> enumerate_partners(const Int& n) {
  require(n >= 1, "enumerate_partners: n must be positive");
  std::vector<PartnerDescriptor> out;
  for (Int s = 1; s * s <= n; ++s) {
    if (n % s != 0) continue;
    Int r = n / s;
    if (gcd_int(r, s) == 1) out.emplace_back(r, s, n);
  }
  std::sort(out.begin(), out.end(),
            [](const PartnerDescriptor& a, const PartnerDescriptor& b) {
              return a.r > b.r;
            });
  return out;
}

// Vector a*e + c*H + b*f in the rank-3 lattice U + <2n>, basis (e, H, f).
// Holds Mukai vectors of sheaves on a degree-2n K3 surface of Picard number
// one: e and f are the H^0 and H^4 classes, H the primitive ample class.
struct ExtendedNSVector {
  Int a, c, b;  // coefficients of e, H, f
  Int n;        // (H^2) = 2n

  std::vector<Int> coords() const { return {a, c, b}; }

  friend bool operator==(const ExtendedNSVector&, const ExtendedNSVector&) =
      default;
};

// <v, w> = 2n c1 c2 - a1 b2 - b1 a2
inline Int mukai_pairing(const ExtendedNSVector& v, const ExtendedNSVector& w) {
  require(v.n == w.n, "mukai_pairing: vectors live on different surfaces");
  return 2 * v.n * v.c * w.c - v.a * w.b - v.b * w.a;
}

// (rk, c1, c1^2/2 - c2 + rk) for a sheaf of rank rk, c1 = c*H, second Chern
// number c2; c1^2/2 = c^2 n since (H^2) = 2n.
inline ExtendedNSVector mukai_vector(const Int& rk, const Int& c, const Int& c2,
                                     const Int& n) {
  require(rk > 0, "mukai_vector: rank must be positive");
  require(n >= 1, "mukai_vector: n must be positive");
  return ExtendedNSVector{rk, c, c * c * n - c2 + rk, n};
}

// Special Mukai vector: middle class primitive (c = 1), positive rank,
// coprime outer entries, and a*b = n (isotropy <v,v> = 0).
inline bool is_special(const ExtendedNSVector& v) {
  return v.c == 1 && v.a > 0 && gcd_int(v.a, v.b) == 1 && v.a * v.b == v.n;
}

// u = l*e + k*H + m*f completing v = (r, 1, s) to a hyperbolic pair:
// l*m = n*k^2 (<u,u> = 0) and 2nk - ls - mr = 1 (<u,v> = 1).
struct HyperbolicSolution {
  Int l, k, m;

  friend bool operator==(const HyperbolicSolution&, const HyperbolicSolution&) =
      default;
};

namespace detail {

// Scan order 0, -1, 1, -2, 2, ... used for both k and l so that the returned
// solution is deterministic.
inline Int spiral(const Int& step) {
  // step 0 -> 0, 1 -> -1, 2 -> 1, 3 -> -2, 4 -> 2, ...
  if (step == 0) return 0;
  Int half = (step + 1) / 2;
  return (step % 2 == 1) ? Int(-half) : half;
}

inline std::vector<Int> sorted_divisors(const Int& n) {
  std::vector<Int> divs;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divs.push_back(d);
    if (d * d != n) divs.push_back(n / d);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

// Exhaustive search over |k| <= k_bound (k scanned 0, -1, 1, -2, 2, ...) and
// signed divisor pairs l*m = n*k^2 (l scanned in the same order); the first
// solution in that order is returned.
inline std::optional<HyperbolicSolution> solve_hyperbolic_partner(
    const Int& n, const Int& r, const Int& s, const Int& k_bound) {
  // either orientation of a coprime factorization is accepted
  require(r >= 1 && s >= 1 && r * s == n && gcd_int(r, s) == 1,
          "solve_hyperbolic_partner: need rs = n with gcd(r,s) = 1");
  require(k_bound >= 1, "solve_hyperbolic_partner: k_bound must be positive");

  auto linear_ok = [&](const Int& l, const Int& k, const Int& m) {
    return 2 * n * k - l * s - m * r == 1;
  };

  for (Int step = 0; step <= 2 * k_bound; ++step) {
    const Int k = detail::spiral(step);
    const Int target = n * k * k;
    if (k == 0) {
      // l*m = 0: either l = 0 (m forced by the linear equation) or m = 0.
      // In scan order, l = 0 comes first.
      if (r == 1 && linear_ok(0, 0, -1))
        return HyperbolicSolution{Int(0), Int(0), Int(-1)};
      if (s == 1 && linear_ok(-1, 0, 0))
        return HyperbolicSolution{Int(-1), Int(0), Int(0)};
      continue;
    }
    // l and m share target's sign structure: l*m = target > 0
    std::vector<Int> ls;
    for (const Int& d : detail::sorted_divisors(target)) {
      ls.push_back(d);
      ls.push_back(-d);
    }
    std::sort(ls.begin(), ls.end(), [](const Int& a, const Int& b) {
      Int aa = abs_int(a), ab = abs_int(b);
      if (aa != ab) return aa < ab;
      return a < b;  // negative first
    });
    for (const Int& l : ls) {
      Int m = target / l;
      if (l * m != target) continue;
      if (linear_ok(l, k, m)) return HyperbolicSolution{l, k, m};
    }
  }
  return std::nullopt;
}

// Generator of the rank-1 orthogonal complement of the hyperbolic pair
// span{u, v} inside U + <2n>:
//   (2n(-l + rk), rm - ls, 2n(m - sk))
// It is orthogonal to u and v and has self-pairing 2n; its class divided by
// 2n generates the discriminant group of U + <2n>.
inline ExtendedNSVector orthogonal_complement_generator(
    const Int& n, const Int& r, const Int& s, const HyperbolicSolution& sol) {
  require(n >= 1 && r * s == n, "orthogonal_complement_generator: rs != n");
  require(sol.l * sol.m == n * sol.k * sol.k,
          "orthogonal_complement_generator: l*m != n*k^2");
  require(2 * n * sol.k - sol.l * s - sol.m * r == 1,
          "orthogonal_complement_generator: 2nk - ls - mr != 1");
  return ExtendedNSVector{2 * n * (-sol.l + r * sol.k), r * sol.m - sol.l * s,
                          2 * n * (sol.m - s * sol.k), n};
}

// Full solution tuple for the degree-2n hyperbolic-pair equations:
// rs = n, lm = nk^2, 2nk - ls - mr = 1.
struct HyperbolicTuple {
  Int r, s, l, k, m;

  friend bool operator==(const HyperbolicTuple&, const HyperbolicTuple&) =
      default;
};

inline bool satisfies_hyperbolic_equations(const Int& n,
                                           const HyperbolicTuple& t) {
  return t.r * t.s == n && t.l * t.m == n * t.k * t.k &&
         2 * n * t.k - t.l * t.s - t.m * t.r == 1;
}

// The residue rm - ls mod 2n indexes the generator of the discriminant group
// carried by the orthogonal complement of span{u, v}.
inline Int hyperbolic_invariant(const HyperbolicTuple& t) {
  return t.r * t.m - t.l * t.s;
}

// Compares the invariants of two solution tuples mod 2n: +1 if congruent,
// -1 if congruent up to sign (+1 wins when both hold), nullopt otherwise.
inline std::optional<int> invariant_congruence_sign(const Int& n,
                                                    const HyperbolicTuple& t1,
                                                    const HyperbolicTuple& t2) {
  require(satisfies_hyperbolic_equations(n, t1) &&
              satisfies_hyperbolic_equations(n, t2),
          "invariant_congruence_sign: tuple violates the hyperbolic equations");
  const Int x1 = hyperbolic_invariant(t1);
  const Int x2 = hyperbolic_invariant(t2);
  if (mod_euclid(x2 - x1, 2 * n) == 0) return 1;
  if (mod_euclid(x2 + x1, 2 * n) == 0) return -1;
  return std::nullopt;
}

// A pair of solution tuples whose invariants collide mod 2n without the
// factorizations matching as they should: sign +1 demands r' = r, sign -1
// demands r' = s.
struct InvariantCollision {
  HyperbolicTuple first, second;
  int sign;
};

namespace detail {

inline std::vector<HyperbolicTuple> hyperbolic_solutions(
    const Int& n, const Int& k_bound, bool signed_coefficients) {
  std::vector<HyperbolicTuple> out;
  const Int box = n * k_bound * k_bound;
  std::vector<std::pair<Int, Int>> rs_pairs;
  for (Int s = 1; s <= n; ++s) {
    if (n % s != 0) continue;
    rs_pairs.emplace_back(n / s, s);
  }
  std::sort(rs_pairs.begin(), rs_pairs.end());
  auto push_if_solution = [&](const Int& r, const Int& s, const Int& l,
                              const Int& k, const Int& m) {
    HyperbolicTuple t{r, s, l, k, m};
    if (satisfies_hyperbolic_equations(n, t)) out.push_back(std::move(t));
  };
  for (const auto& [r, s] : rs_pairs) {
    if (signed_coefficients) {
      // k = 0 forces l*m = 0, and the linear equation then pins the free
      // coefficient: l = 0 needs m = -1/r, m = 0 needs l = -1/s.
      push_if_solution(r, s, 0, 0, -1);
      push_if_solution(r, s, -1, 0, 0);
    }
    const Int k_lo = signed_coefficients ? -k_bound : Int(1);
    for (Int k = k_lo; k <= k_bound; ++k) {
      if (k == 0) continue;
      const Int target = n * k * k;
      for (const Int& d : sorted_divisors(target)) {
        const Int m = target / d;
        if (d > box || m > box) continue;
        push_if_solution(r, s, d, k, m);
        if (signed_coefficients) push_if_solution(r, s, -d, k, -m);
      }
    }
  }
  return out;
}

}  // namespace detail

// Exhaustive check that colliding invariants force matching factorizations:
// over all solution tuples with k <= bound and l, m <= n*bound^2, any pair
// with invariants congruent mod 2n must have r' = r, and any pair congruent
// up to sign must have r' = s. Returns all violations (expected none).
//
// With signed_coefficients the same box is searched allowing l, k, m <= 0 as
// well; that mode is diagnostic only and nothing is asserted about it.
inline std::vector<InvariantCollision> search_invariant_collisions(
    const Int& n, const Int& bound, bool signed_coefficients = false) {
  require(n >= 1 && bound >= 1,
          "search_invariant_collisions: n and bound must be positive");
  const auto sols = detail::hyperbolic_solutions(n, bound, signed_coefficients);
  std::vector<InvariantCollision> violations;
  const Int two_n = 2 * n;
  for (const auto& t1 : sols) {
    const Int x1 = hyperbolic_invariant(t1);
    for (const auto& t2 : sols) {
      const Int x2 = hyperbolic_invariant(t2);
      // the two congruence hypotheses are checked independently: when both
      // hold, both conclusions are demanded
      if (mod_euclid(x2 - x1, two_n) == 0 && t2.r != t1.r)
        violations.push_back(InvariantCollision{t1, t2, 1});
      if (mod_euclid(x2 + x1, two_n) == 0 && t2.r != t1.s)
        violations.push_back(InvariantCollision{t1, t2, -1});
    }
  }
  return violations;
}

}  // namespace fmk3
