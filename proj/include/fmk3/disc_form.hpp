#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fmk3/lattice.hpp"
#include "fmk3/smith.hpp"

namespace fmk3 {

inline constexpr std::size_t kDefaultIsometryBound = 10000;

// Finite quadratic form (A, q): A = Z/d1 + ... + Z/dk with d1 | d2 | ... and
// q: A -> Q/2Z. q_gram holds q(g_i) on the diagonal (canonical in [0,2)) and
// the bilinear values b(g_i, g_j) off the diagonal (canonical in [0,1)).
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() : q_gram_(0, 0) {}  // trivial group

  FiniteQuadraticForm(std::vector<Int> orders, RatMatrix q_gram)
      : orders_(std::move(orders)), q_gram_(std::move(q_gram)) {
    const std::size_t k = orders_.size();
    require(q_gram_.rows() == k && q_gram_.cols() == k,
            "FiniteQuadraticForm: q_gram size != number of generators");
    for (std::size_t i = 0; i < k; ++i) {
      require(orders_[i] > 1, "FiniteQuadraticForm: orders must exceed 1");
      if (i + 1 < k)
        require(orders_[i + 1] % orders_[i] == 0,
                "FiniteQuadraticForm: orders must form a divisibility chain");
    }
    for (std::size_t i = 0; i < k; ++i) {
      q_gram_(i, i) = mod2z(q_gram_(i, i));
      // q must be constant on residues: d^2 q(g) in 2Z
      require(is_integral(q_gram_(i, i) * orders_[i] * orders_[i] / 2),
              "FiniteQuadraticForm: q value incompatible with generator order");
      for (std::size_t j = i + 1; j < k; ++j) {
        require(q_gram_(i, j) == q_gram_(j, i),
                "FiniteQuadraticForm: q_gram not symmetric");
        Rat b = mod1(q_gram_(i, j));
        require(is_integral(b * orders_[i]) && is_integral(b * orders_[j]),
                "FiniteQuadraticForm: bilinear value incompatible with orders");
        q_gram_(i, j) = b;
        q_gram_(j, i) = b;
      }
    }
  }

  const std::vector<Int>& orders() const { return orders_; }
  const RatMatrix& q_gram() const { return q_gram_; }
  std::size_t num_generators() const { return orders_.size(); }
  bool trivial() const { return orders_.empty(); }

  Int group_order() const {
    Int n = 1;
    for (const Int& d : orders_) n *= d;
    return n;
  }

  // canonical residue tuple
  std::vector<Int> reduce(std::vector<Int> x) const {
    require(x.size() == orders_.size(),
            "FiniteQuadraticForm: tuple length != number of generators");
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = mod_euclid(x[i], orders_[i]);
    return x;
  }

  friend bool operator==(const FiniteQuadraticForm& a,
                         const FiniteQuadraticForm& b) {
    return a.orders_ == b.orders_ && a.q_gram_ == b.q_gram_;
  }

 private:
  std::vector<Int> orders_;
  RatMatrix q_gram_;
};

// q(x) = sum x_i^2 q(g_i) + 2 sum_{i<j} x_i x_j b(g_i, g_j), in [0, 2).
inline Rat q_value(const FiniteQuadraticForm& f, const std::vector<Int>& x) {
  require(x.size() == f.num_generators(),
          "q_value: tuple length != number of generators");
  Rat acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += Rat(x[i] * x[i]) * f.q_gram()(i, i);
    for (std::size_t j = i + 1; j < x.size(); ++j)
      acc += Rat(2 * x[i] * x[j]) * f.q_gram()(i, j);
  }
  return mod2z(acc);
}

// b(x, y) in [0, 1), where b is the bilinear form of q (b(g,g) = q(g) mod Z).
inline Rat bilinear_value(const FiniteQuadraticForm& f,
                          const std::vector<Int>& x,
                          const std::vector<Int>& y) {
  require(x.size() == f.num_generators() && y.size() == f.num_generators(),
          "bilinear_value: tuple length != number of generators");
  Rat acc(0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      acc += Rat(x[i] * y[j]) * f.q_gram()(i, j);
  return mod1(acc);
}

inline FiniteQuadraticForm negate(const FiniteQuadraticForm& f) {
  RatMatrix g = f.q_gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      g(i, j) = (i == j) ? mod2z(-g(i, j)) : mod1(-g(i, j));
  return FiniteQuadraticForm(f.orders(), std::move(g));
}

// Automorphism of a FiniteQuadraticForm; column j of `map` is the image of
// generator g_j as a residue tuple (row i reduced mod d_i).
struct DiscIsometry {
  IntMatrix map;

  friend bool operator==(const DiscIsometry& a, const DiscIsometry& b) {
    return a.map == b.map;
  }
  friend bool operator<(const DiscIsometry& a, const DiscIsometry& b) {
    return a.map < b.map;
  }
};

inline DiscIsometry identity_isometry(const FiniteQuadraticForm& f) {
  return DiscIsometry{IntMatrix::identity(f.num_generators())};
}

inline DiscIsometry negation_isometry(const FiniteQuadraticForm& f) {
  const std::size_t k = f.num_generators();
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = f.orders()[i] - 1;
  return DiscIsometry{std::move(m)};
}

inline std::vector<Int> apply_isometry(const FiniteQuadraticForm& f,
                                       const DiscIsometry& phi,
                                       const std::vector<Int>& x) {
  std::vector<Int> y(f.num_generators(), Int(0));
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += phi.map(i, j) * x[j];
    y[i] = mod_euclid(y[i], f.orders()[i]);
  }
  return y;
}

// compose(a, b) = a after b
inline DiscIsometry compose(const FiniteQuadraticForm& f, const DiscIsometry& a,
                            const DiscIsometry& b) {
  IntMatrix m = a.map * b.map;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      m(i, j) = mod_euclid(m(i, j), f.orders()[i]);
  return DiscIsometry{std::move(m)};
}

namespace detail {

// All residue tuples of the group, in mixed-radix (lexicographic) order.
inline std::vector<std::vector<Int>> all_elements(
    const FiniteQuadraticForm& f, std::size_t bound = kDefaultIsometryBound) {
  require(f.group_order() <= Int(bound),
          "finite quadratic form: group order exceeds brute-force bound");
  std::vector<std::vector<Int>> out;
  std::vector<Int> x(f.num_generators(), Int(0));
  while (true) {
    out.push_back(x);
    std::size_t i = x.size();
    while (i > 0) {
      --i;
      if (++x[i] < f.orders()[i]) break;
      x[i] = 0;
      if (i == 0) return out;
    }
    if (x.size() == 0) return out;
  }
}

// Does the candidate generator assignment extend to a group homomorphism?
// Column j may be hit by g_j only if d_j * image_j = 0.
inline bool respects_order(const FiniteQuadraticForm& f, const Int& order,
                           const std::vector<Int>& image) {
  for (std::size_t i = 0; i < image.size(); ++i)
    if (mod_euclid(order * image[i], f.orders()[i]) != 0) return false;
  return true;
}

// Subgroup generated by the given tuples equals the whole group?
inline bool generates_group(const FiniteQuadraticForm& f,
                            const std::vector<std::vector<Int>>& gens) {
  const Int target = f.group_order();
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> frontier;
  std::vector<Int> zero(f.num_generators(), Int(0));
  seen.insert(zero);
  frontier.push_back(zero);
  while (!frontier.empty()) {
    std::vector<Int> cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : gens) {
      std::vector<Int> nxt(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i)
        nxt[i] = mod_euclid(cur[i] + g[i], f.orders()[i]);
      if (seen.insert(nxt).second) frontier.push_back(std::move(nxt));
    }
  }
  return Int(seen.size()) == target;
}

// Depth-first search over generator images; used both for O(A_F) itself
// (src == dst) and for isomorphism testing between two forms.
inline void search_generator_maps(const FiniteQuadraticForm& src,
                                  const FiniteQuadraticForm& dst,
                                  std::size_t bound, bool first_only,
                                  std::vector<IntMatrix>& out) {
  if (src.orders() != dst.orders()) return;
  const std::size_t k = src.num_generators();
  if (k == 0) {
    out.push_back(IntMatrix(0, 0));
    return;
  }
  const auto elements = all_elements(dst, bound);

  // candidate images per generator: correct annihilator and matching q value
  std::vector<std::vector<std::size_t>> candidates(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t e = 0; e < elements.size(); ++e)
      if (respects_order(dst, src.orders()[j], elements[e]) &&
          q_value(dst, elements[e]) == src.q_gram()(j, j))
        candidates[j].push_back(e);

  std::vector<std::size_t> chosen(k);
  auto dfs = [&](auto&& self, std::size_t j) -> bool {
    if (j == k) {
      std::vector<std::vector<Int>> images;
      images.reserve(k);
      for (std::size_t c = 0; c < k; ++c) images.push_back(elements[chosen[c]]);
      if (!generates_group(dst, images)) return false;
      IntMatrix m(k, k);
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < k; ++i) m(i, c) = images[c][i];
      out.push_back(std::move(m));
      return first_only;
    }
    for (std::size_t e : candidates[j]) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i)
        ok = bilinear_value(dst, elements[chosen[i]], elements[e]) ==
             mod1(src.q_gram()(i, j));
      if (!ok) continue;
      chosen[j] = e;
      if (self(self, j + 1)) return true;
    }
    return false;
  };
  dfs(dfs, 0);
}

}  // namespace detail

inline bool is_isometry(const FiniteQuadraticForm& f, const DiscIsometry& phi,
                        std::size_t bound = kDefaultIsometryBound) {
  require(f.group_order() <= Int(bound),
          "is_isometry: group order exceeds brute-force bound");
  const std::size_t k = f.num_generators();
  if (phi.map.rows() != k || phi.map.cols() != k) return false;
  std::vector<std::vector<Int>> images;
  images.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Int> col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = phi.map(i, j);
    col = f.reduce(col);
    if (!detail::respects_order(f, f.orders()[j], col)) return false;
    if (q_value(f, col) != f.q_gram()(j, j)) return false;
    images.push_back(std::move(col));
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (bilinear_value(f, images[i], images[j]) != f.q_gram()(i, j))
        return false;
  return detail::generates_group(f, images);
}

// Explicit subgroup of O(A_F), kept sorted in the canonical matrix order.
struct DiscSubgroup {
  std::vector<DiscIsometry> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(const DiscIsometry& phi) const {
    return std::binary_search(elements.begin(), elements.end(), phi);
  }
};

// Full isometry group O(A_F) by brute force over generator images.
inline DiscSubgroup enumerate_isometries(
    const FiniteQuadraticForm& f, std::size_t bound = kDefaultIsometryBound) {
  std::vector<IntMatrix> maps;
  detail::search_generator_maps(f, f, bound, /*first_only=*/false, maps);
  DiscSubgroup g;
  g.elements.reserve(maps.size());
  for (auto& m : maps) g.elements.push_back(DiscIsometry{std::move(m)});
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

// Witness isometry carrying q_{f1} to q_{f2} (column j = image of f1's g_j in
// f2 coordinates), if one exists.
inline std::optional<DiscIsometry> isomorphism_witness(
    const FiniteQuadraticForm& f1, const FiniteQuadraticForm& f2,
    std::size_t bound = kDefaultIsometryBound) {
  std::vector<IntMatrix> maps;
  detail::search_generator_maps(f1, f2, bound, /*first_only=*/true, maps);
  if (maps.empty()) return std::nullopt;
  return DiscIsometry{std::move(maps.front())};
}

inline bool is_isomorphic(const FiniteQuadraticForm& f1,
                          const FiniteQuadraticForm& f2,
                          std::size_t bound = kDefaultIsometryBound) {
  return isomorphism_witness(f1, f2, bound).has_value();
}

inline DiscSubgroup subgroup_from_generators(
    const FiniteQuadraticForm& f, const std::vector<DiscIsometry>& gens,
    std::size_t bound = kDefaultIsometryBound) {
  for (const auto& g : gens)
    require(is_isometry(f, g, bound),
            "subgroup_from_generators: generator is not an isometry");
  std::set<DiscIsometry> seen;
  std::vector<DiscIsometry> frontier;
  DiscIsometry id = identity_isometry(f);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    DiscIsometry cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : gens) {
      DiscIsometry nxt = compose(f, g, cur);
      if (seen.insert(nxt).second) frontier.push_back(nxt);
    }
  }
  DiscSubgroup out;
  out.elements.assign(seen.begin(), seen.end());
  return out;
}

inline DiscIsometry inverse(const FiniteQuadraticForm& f,
                            const DiscIsometry& phi,
                            std::size_t bound = kDefaultIsometryBound) {
  const std::size_t k = f.num_generators();
  // tabulate phi as a permutation of A and read off generator preimages
  std::map<std::vector<Int>, std::vector<Int>> preimage;
  for (const auto& x : detail::all_elements(f, bound))
    preimage[apply_isometry(f, phi, x)] = x;
  IntMatrix m(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Int> gj(k, Int(0));
    gj[j] = 1;
    auto it = preimage.find(gj);
    require(it != preimage.end(), "inverse: map is not a bijection");
    for (std::size_t i = 0; i < k; ++i) m(i, j) = it->second[i];
  }
  return DiscIsometry{std::move(m)};
}

// Discriminant form A_L = L*/L of an even nondegenerate lattice, together
// with rational lifts of the chosen generators (columns, in lattice
// coordinates).
struct DiscriminantForm {
  FiniteQuadraticForm form;
  RatMatrix lifts;  // rank x k
};

inline DiscriminantForm discriminant_form_with_lifts(const IntegerLattice& l) {
  const SmithDecomposition snf = smith_normal_form(l.gram());
  const std::size_t n = l.rank();
  // left * G * right = D  =>  G^{-1} Z^n = right * D^{-1} Z^n,
  // so column i of `right` scaled by 1/d_i generates a Z/d_i summand of L*/L.
  std::vector<Int> orders;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.diag(i, i) > 1) {
      orders.push_back(snf.diag(i, i));
      idx.push_back(i);
    }
  const std::size_t k = orders.size();
  RatMatrix lifts(n, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r)
      lifts(r, c) = Rat(snf.right(r, idx[c]), orders[c]);
  const RatMatrix gram_q = to_rational(l.gram());
  RatMatrix q(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Rat acc(0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          acc += lifts(r, i) * gram_q(r, s) * lifts(s, j);
      q(i, j) = (i == j) ? mod2z(acc) : mod1(acc);
      q(j, i) = q(i, j);
    }
  return DiscriminantForm{FiniteQuadraticForm(std::move(orders), std::move(q)),
                          std::move(lifts)};
}

inline FiniteQuadraticForm discriminant_form(const IntegerLattice& l) {
  return discriminant_form_with_lifts(l).form;
}

// Nikulin's criterion for even lattices: same signature and isomorphic
// discriminant forms.
inline bool same_genus(const IntegerLattice& l1, const IntegerLattice& l2,
                       std::size_t bound = kDefaultIsometryBound) {
  if (signature(l1) != signature(l2)) return false;
  return is_isomorphic(discriminant_form(l1), discriminant_form(l2), bound);
}

}  // namespace fmk3
