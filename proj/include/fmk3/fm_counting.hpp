#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fmk3/bqf.hpp"
#include "fmk3/disc_form.hpp"
#include "fmk3/fm_partners.hpp"
#include "fmk3/lattice.hpp"

namespace fmk3 {

// One class of the genus: its discriminant form together with the image of
// the lattice isometry group inside O(A).
struct GenusRepresentative {
  FiniteQuadraticForm form;
  DiscSubgroup lattice_image;
};

// Input of the partner-counting formula. hodge_image is the image of the
// Hodge isometry group of the transcendental lattice, already transported
// into O(A) of the base form genus_reps[0].form; it is moved to the other
// representatives along an isomorphism witness (any choice yields the same
// double-coset counts).
struct CountingInput {
  std::vector<GenusRepresentative> genus_reps;
  DiscSubgroup hodge_image;
};

namespace detail {

inline void require_subgroup(const FiniteQuadraticForm& a,
                             const DiscSubgroup& sub, std::size_t bound,
                             const char* who) {
  require(!sub.elements.empty(), std::string(who) + ": empty subgroup");
  require(std::is_sorted(sub.elements.begin(), sub.elements.end()),
          std::string(who) + ": subgroup elements not in canonical order");
  require(sub.contains(identity_isometry(a)),
          std::string(who) + ": subgroup misses the identity");
  for (const auto& g : sub.elements)
    require(is_isometry(a, g, bound),
            std::string(who) + ": element is not an isometry");
  for (const auto& g : sub.elements)
    for (const auto& h : sub.elements)
      require(sub.contains(compose(a, g, h)),
              std::string(who) + ": subgroup not closed under composition");
}

}  // namespace detail

// Number of double cosets left\O(A)/right, by orbit closure over the
// explicit element list of O(A).
inline long long double_coset_count(const FiniteQuadraticForm& a,
                                    const DiscSubgroup& left,
                                    const DiscSubgroup& right,
                                    std::size_t bound = kDefaultIsometryBound) {
  const DiscSubgroup full = enumerate_isometries(a, bound);
  detail::require_subgroup(a, left, bound, "double_coset_count(left)");
  detail::require_subgroup(a, right, bound, "double_coset_count(right)");
  for (const auto& g : left.elements)
    require(full.contains(g), "double_coset_count: left is not inside O(A)");
  for (const auto& g : right.elements)
    require(full.contains(g), "double_coset_count: right is not inside O(A)");

  auto index_of = [&](const DiscIsometry& g) {
    auto it = std::lower_bound(full.elements.begin(), full.elements.end(), g);
    require(it != full.elements.end() && *it == g,
            "double_coset_count: composite left the group");
    return static_cast<std::size_t>(it - full.elements.begin());
  };

  std::vector<bool> visited(full.elements.size(), false);
  long long orbits = 0;
  for (std::size_t seed = 0; seed < full.elements.size(); ++seed) {
    if (visited[seed]) continue;
    ++orbits;
    std::vector<std::size_t> stack{seed};
    visited[seed] = true;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const DiscIsometry& x = full.elements[cur];
      for (const auto& l : left.elements) {
        std::size_t nxt = index_of(compose(a, l, x));
        if (!visited[nxt]) {
          visited[nxt] = true;
          stack.push_back(nxt);
        }
      }
      for (const auto& r : right.elements) {
        std::size_t nxt = index_of(compose(a, x, r));
        if (!visited[nxt]) {
          visited[nxt] = true;
          stack.push_back(nxt);
        }
      }
    }
  }
  return orbits;
}

struct FmCountResult {
  long long total = 0;
  std::vector<long long> per_class;  // one summand per genus representative
};

// Sum of double-coset counts over the genus representatives; the i-th
// summand counts the partners whose Neron-Severi lattice lands in class i.
inline FmCountResult fm_count(const CountingInput& input,
                              std::size_t bound = kDefaultIsometryBound) {
  require(!input.genus_reps.empty(), "fm_count: no genus representatives");
  const FiniteQuadraticForm& base = input.genus_reps.front().form;
  detail::require_subgroup(base, input.hodge_image, bound,
                           "fm_count(hodge_image)");
  FmCountResult result;
  for (const auto& rep : input.genus_reps) {
    DiscSubgroup right;
    if (rep.form == base) {
      right = input.hodge_image;
    } else {
      auto witness = isomorphism_witness(base, rep.form, bound);
      require(witness.has_value(),
              "fm_count: genus representatives carry non-isomorphic forms");
      const DiscIsometry w = *witness;
      const DiscIsometry w_inv = [&] {
        // invert the cross-form map by tabulating it on the base group
        std::map<std::vector<Int>, std::vector<Int>> pre;
        for (const auto& x : detail::all_elements(base, bound)) {
          std::vector<Int> y(rep.form.num_generators(), Int(0));
          for (std::size_t i = 0; i < y.size(); ++i) {
            for (std::size_t j = 0; j < x.size(); ++j)
              y[i] += w.map(i, j) * x[j];
            y[i] = mod_euclid(y[i], rep.form.orders()[i]);
          }
          pre[y] = x;
        }
        const std::size_t k = base.num_generators();
        IntMatrix m(k, k);
        for (std::size_t j = 0; j < k; ++j) {
          std::vector<Int> gj(k, Int(0));
          gj[j] = 1;
          auto it = pre.find(gj);
          require(it != pre.end(), "fm_count: witness is not a bijection");
          for (std::size_t i = 0; i < k; ++i) m(i, j) = it->second[i];
        }
        return DiscIsometry{std::move(m)};
      }();
      for (const auto& h : input.hodge_image.elements) {
        IntMatrix m = w.map * h.map * w_inv.map;
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = mod_euclid(m(i, j), rep.form.orders()[i]);
        right.elements.push_back(DiscIsometry{std::move(m)});
      }
      std::sort(right.elements.begin(), right.elements.end());
    }
    long long c = double_coset_count(rep.form, rep.lattice_image, right, bound);
    result.per_class.push_back(c);
    result.total += c;
  }
  return result;
}

// Partner count of a degree-2n K3 surface of Picard number one, evaluated
// through the counting formula: A = disc form of <2n>, both the lattice
// image and the Hodge image reduce to {+-id} (the transcendental rank 21 is
// odd, which forces the Hodge group down to +-id), and the genus of <2n> is
// taken to have the single representative used throughout. Equals
// 2^(tau(n)-1).
inline long long rank1_fm_count(const Int& n,
                                std::size_t bound = kDefaultIsometryBound) {
  require(n >= 2, "rank1_fm_count: n must be at least 2");
  const auto a = discriminant_form(
      standard_lattice(StandardLattice::rank1, 2 * n));
  const DiscSubgroup pm =
      subgroup_from_generators(a, {negation_isometry(a)}, bound);
  return fm_count(CountingInput{{{a, pm}}, pm}, bound).total;
}

// Order of the Galois group of the period-space covering for degree-2n
// quasi-polarized K3 surfaces: |O(A)| of the rank-21 lattice
// <-2n> + U^2 + E8(-1)^2, divided by |{+-id}| = 2. Equals 2^(tau(n)-1);
// surjectivity of the isometry restriction map onto O(A) is a classical
// input here, not recomputed.
inline long long gamma_quotient_order(const Int& n,
                                      std::size_t bound = kDefaultIsometryBound) {
  require(n >= 2, "gamma_quotient_order: n must be at least 2");
  const auto a =
      discriminant_form(standard_lattice(StandardLattice::lambda_n, n));
  const auto full = enumerate_isometries(a, bound);
  const long long size = static_cast<long long>(full.order());
  require(size % 2 == 0, "gamma_quotient_order: |O(A)| is not even");
  return size / 2;
}

// phi(2I) must divide the transcendental rank for 2I to be a possible order
// of the Hodge isometry group.
inline bool hodge_order_check(const Int& two_i, const Int& rank_t) {
  require(two_i >= 2 && two_i % 2 == 0,
          "hodge_order_check: order must be even and positive");
  require(rank_t >= 1, "hodge_order_check: rank must be positive");
  return rank_t % euler_phi(two_i) == 0;
}

// Partner count of a K3 surface with Picard number 2 and determinant -p:
// (h(p) + 1)/2 with h the ideal class number of the real quadratic field.
inline long long rank2_fm_count(const Int& p) {
  require(is_prime(p), "rank2_fm_count: p must be prime");
  require(mod_euclid(p, 4) == 1, "rank2_fm_count: p must be 1 mod 4");
  const long long h = wide_class_number(p);
  require(h % 2 == 1,
          "rank2_fm_count: class number must be odd for prime p = 1 mod 4");
  return (h + 1) / 2;
}

}  // namespace fmk3
