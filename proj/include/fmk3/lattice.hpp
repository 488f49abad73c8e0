#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fmk3/matrix.hpp"

namespace fmk3 {

// Inertia of a nondegenerate symmetric form: positive + negative = rank.
struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature operator+(const Signature& a, const Signature& b) {
  return Signature{a.positive + b.positive, a.negative + b.negative};
}

// Even nondegenerate lattice presented by its Gram matrix of intersection
// numbers. Immutable after construction.
class IntegerLattice {
 public:
  explicit IntegerLattice(IntMatrix gram, std::string label = "")
      : gram_(std::move(gram)), label_(std::move(label)) {
    require(gram_.rows() == gram_.cols() && gram_.rows() > 0,
            "IntegerLattice: Gram matrix must be square and nonempty");
    for (std::size_t i = 0; i < gram_.rows(); ++i) {
      require(gram_(i, i) % 2 == 0,
              "IntegerLattice: odd diagonal entry gram[" + std::to_string(i) +
                  "][" + std::to_string(i) + "]");
      for (std::size_t j = i + 1; j < gram_.cols(); ++j)
        require(gram_(i, j) == gram_(j, i),
                "IntegerLattice: gram[" + std::to_string(i) + "][" +
                    std::to_string(j) + "] != gram[" + std::to_string(j) +
                    "][" + std::to_string(i) + "]");
    }
    require(fmk3::determinant(gram_) != 0,
            "IntegerLattice: degenerate pairing (det = 0)");
  }

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const std::string& label() const { return label_; }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.gram_ == b.gram_;
  }

 private:
  IntMatrix gram_;
  std::string label_;
};

enum class StandardLattice {
  hyperbolic_u,  // U, Gram [[0,-1],[-1,0]] in the (e,f) basis
  e8_minus,      // E8(-1), negative definite, det 1
  rank1,         // <d>, d even nonzero
  lambda_n,      // <-2n> + U + U + E8(-1) + E8(-1), rank 21
  lambda_k3,     // U^3 + E8(-1)^2, rank 22
  extended_ns,   // U + <2n> in basis order (e, H, f), rank 3
};

namespace detail {

// E8 Cartan matrix, nodes ordered: chain 0-2-3-4-5-6-7 with node 1 hung off
// node 3.
inline IntMatrix e8_gram(int sign) {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2 * sign;
  auto link = [&](std::size_t i, std::size_t j) {
    g(i, j) = -sign;
    g(j, i) = -sign;
  };
  link(0, 2);
  link(1, 3);
  link(2, 3);
  link(3, 4);
  link(4, 5);
  link(5, 6);
  link(6, 7);
  return g;
}

inline IntMatrix u_gram() {
  return IntMatrix{{Int(0), Int(-1)}, {Int(-1), Int(0)}};
}

}  // namespace detail

inline IntegerLattice direct_sum(const std::vector<IntegerLattice>& parts) {
  require(!parts.empty(), "direct_sum: empty summand list");
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  IntMatrix g(n, n);
  std::size_t off = 0;
  std::string label;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j)
        g(off + i, off + j) = p.gram()(i, j);
    off += p.rank();
    if (!p.label().empty())
      label += (label.empty() ? "" : " + ") + p.label();
  }
  return IntegerLattice(std::move(g), label);
}

inline IntegerLattice standard_lattice(StandardLattice which,
                                       const Int& param = 0) {
  switch (which) {
    case StandardLattice::hyperbolic_u:
      return IntegerLattice(detail::u_gram(), "U");
    case StandardLattice::e8_minus:
      return IntegerLattice(detail::e8_gram(-1), "E8(-1)");
    case StandardLattice::rank1: {
      require(param != 0 && param % 2 == 0,
              "standard_lattice: rank-1 lattice needs an even nonzero Gram entry");
      IntMatrix g(1, 1);
      g(0, 0) = param;
      return IntegerLattice(std::move(g), "<" + param.str() + ">");
    }
    case StandardLattice::extended_ns: {
      require(param >= 1, "standard_lattice: extended_ns needs n >= 1");
      // basis (e, H, f): <e,f> = -1, <H,H> = 2n, all else 0
      IntMatrix g(3, 3);
      g(0, 2) = -1;
      g(2, 0) = -1;
      g(1, 1) = 2 * param;
      return IntegerLattice(std::move(g), "U + <" + Int(2 * param).str() + ">");
    }
    case StandardLattice::lambda_n: {
      require(param >= 1, "standard_lattice: lambda_n needs n >= 1");
      return direct_sum({standard_lattice(StandardLattice::rank1, -2 * param),
                         standard_lattice(StandardLattice::hyperbolic_u),
                         standard_lattice(StandardLattice::hyperbolic_u),
                         standard_lattice(StandardLattice::e8_minus),
                         standard_lattice(StandardLattice::e8_minus)});
    }
    case StandardLattice::lambda_k3:
      return direct_sum({standard_lattice(StandardLattice::hyperbolic_u),
                         standard_lattice(StandardLattice::hyperbolic_u),
                         standard_lattice(StandardLattice::hyperbolic_u),
                         standard_lattice(StandardLattice::e8_minus),
                         standard_lattice(StandardLattice::e8_minus)});
  }
  throw std::invalid_argument("standard_lattice: unknown name");
}

inline Int pairing(const IntegerLattice& l, const std::vector<Int>& x,
                   const std::vector<Int>& y) {
  require(x.size() == l.rank() && y.size() == l.rank(),
          "pairing: vector length != rank");
  Int acc = 0;
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j)
      acc += x[i] * l.gram()(i, j) * y[j];
  return acc;
}

inline Int determinant(const IntegerLattice& l) {
  return determinant(l.gram());
}

// Exact inertia by symmetric Gaussian elimination over Q. Zero pivots are
// repaired by a row+column addition (congruence), so no eigenvalue numerics
// are involved.
inline Signature signature(const IntegerLattice& l) {
  RatMatrix a = to_rational(l.gram());
  const std::size_t n = a.rows();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish; find an off-diagonal entry
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n && bi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      require(bi != n, "signature: degenerate form");
      a.add_row_multiple(bi, bj, Rat(1));
      a.add_col_multiple(bi, bj, Rat(1));  // a(bi,bi) is now 2*a(bi,bj)
      p = bi;
    }
    a.swap_rows(k, p);
    a.swap_cols(k, p);
    const Rat pivot = a(k, k);
    if (pivot > 0)
      ++sig.positive;
    else
      ++sig.negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / pivot;
      a.add_row_multiple(i, k, -f);
      a.add_col_multiple(i, k, -f);
    }
  }
  return sig;
}

}  // namespace fmk3
