#include <catch2/catch.hpp>

#include "fmk3/disc_form.hpp"
#include "fmk3/fm_counting.hpp"
#include "fmk3/fm_partners.hpp"

using namespace fmk3;

namespace {

FiniteQuadraticForm rank1_disc(int n) {
  return discriminant_form(standard_lattice(StandardLattice::rank1, 2 * n));
}

DiscSubgroup plus_minus(const FiniteQuadraticForm& f) {
  return subgroup_from_generators(f, {negation_isometry(f)});
}

DiscSubgroup trivial_subgroup(const FiniteQuadraticForm& f) {
  return subgroup_from_generators(f, {});
}

}  // namespace

TEST_CASE("double coset degenerate identities") {
  auto f = rank1_disc(6);
  auto full = enumerate_isometries(f);
  CHECK(double_coset_count(f, full, full) == 1);
  CHECK(double_coset_count(f, plus_minus(f), plus_minus(f)) == 2);
  CHECK(double_coset_count(f, trivial_subgroup(f), trivial_subgroup(f)) == 4);
  CHECK(double_coset_count(f, full, trivial_subgroup(f)) == 1);
  CHECK(double_coset_count(f, trivial_subgroup(f), full) == 1);
}

TEST_CASE("double coset identities across small n") {
  for (int n : {2, 3, 4, 5, 6, 8, 10, 12, 15, 30}) {
    auto f = rank1_disc(n);
    auto full = enumerate_isometries(f);
    auto id = trivial_subgroup(f);
    REQUIRE(double_coset_count(f, id, id) ==
            static_cast<long long>(full.order()));
    REQUIRE(double_coset_count(f, full, id) == 1);
    REQUIRE(double_coset_count(f, id, full) == 1);
  }
}

TEST_CASE("double coset count is conjugation invariant") {
  auto f = rank1_disc(15);  // O(A) has order 4
  auto full = enumerate_isometries(f);
  auto pm = plus_minus(f);
  const long long base = double_coset_count(f, pm, pm);
  for (const auto& g : full.elements) {
    auto g_inv = inverse(f, g);
    DiscSubgroup left, right;
    for (const auto& x : pm.elements)
      left.elements.push_back(compose(f, g, compose(f, x, g_inv)));
    for (const auto& x : pm.elements)
      right.elements.push_back(compose(f, g, compose(f, x, g_inv)));
    std::sort(left.elements.begin(), left.elements.end());
    std::sort(right.elements.begin(), right.elements.end());
    REQUIRE(double_coset_count(f, left, right) == base);
  }
}

TEST_CASE("double coset rejects non-subgroups") {
  auto f = rank1_disc(6);
  DiscSubgroup broken;
  broken.elements.push_back(identity_isometry(f));
  broken.elements.push_back(DiscIsometry{IntMatrix{{Int(5)}}});
  broken.elements.push_back(DiscIsometry{IntMatrix{{Int(7)}}});
  std::sort(broken.elements.begin(), broken.elements.end());
  // {1, 5, 7} misses 5*7 = 11: not closed
  CHECK_THROWS_AS(double_coset_count(f, broken, broken),
                  std::invalid_argument);
}

TEST_CASE("fm_count on single representatives") {
  auto f6 = rank1_disc(6);
  auto full = enumerate_isometries(f6);
  CHECK(fm_count(CountingInput{{{f6, full}}, full}).total == 1);

  auto pm6 = plus_minus(f6);
  auto res6 = fm_count(CountingInput{{{f6, pm6}}, pm6});
  CHECK(res6.total == 2);
  CHECK(res6.per_class == std::vector<long long>{2});

  auto f8 = rank1_disc(8);
  auto pm8 = plus_minus(f8);
  CHECK(fm_count(CountingInput{{{f8, pm8}}, pm8}).total == 1);
}

TEST_CASE("fm_count transports the hodge image to other representatives") {
  // two isomorphic copies of the <2n> discriminant form, n = 6: the second
  // written with the generator scaled by the unit 5
  auto f = rank1_disc(6);
  RatMatrix q(1, 1);
  q(0, 0) = Rat(25, 12);  // q(5g) = 25/12 = 1/12 mod 2, same form
  FiniteQuadraticForm g({Int(12)}, q);
  REQUIRE(g == f);  // canonical reduction makes them literally equal
  auto pm = plus_minus(f);
  auto res = fm_count(CountingInput{{{f, pm}, {g, pm}}, pm});
  CHECK(res.per_class == std::vector<long long>{2, 2});
  CHECK(res.total == 4);
}

TEST_CASE("fm_count across genuinely distinct presentations") {
  // (Z/5, 2/5) and (Z/5, 8/5) are isomorphic (scale the generator by 2) but
  // not equal, so the hodge image must travel through a witness
  RatMatrix qa(1, 1), qb(1, 1);
  qa(0, 0) = Rat(2, 5);
  qb(0, 0) = Rat(8, 5);
  FiniteQuadraticForm f5a({Int(5)}, qa), f5b({Int(5)}, qb);
  REQUIRE(!(f5a == f5b));
  REQUIRE(is_isomorphic(f5a, f5b));
  auto res = fm_count(
      CountingInput{{{f5a, plus_minus(f5a)}, {f5b, plus_minus(f5b)}},
                    plus_minus(f5a)});
  CHECK(res.per_class == std::vector<long long>{1, 1});
  CHECK(res.total == 2);

  auto res2 = fm_count(
      CountingInput{{{f5a, trivial_subgroup(f5a)}, {f5b, trivial_subgroup(f5b)}},
                    trivial_subgroup(f5a)});
  CHECK(res2.per_class == std::vector<long long>{2, 2});
  CHECK(res2.total == 4);
}

TEST_CASE("fm_count rejects mismatched genus data") {
  auto f = rank1_disc(6);
  auto other = rank1_disc(5);  // Z/10, not isomorphic to Z/12
  CHECK_THROWS_AS(
      fm_count(CountingInput{{{f, plus_minus(f)}, {other, plus_minus(other)}},
                             plus_minus(f)}),
      std::invalid_argument);
}

TEST_CASE("rank one partner counts") {
  CHECK(rank1_fm_count(6) == 2);
  CHECK(rank1_fm_count(2) == 1);
  CHECK(rank1_fm_count(8) == 1);
  CHECK(rank1_fm_count(30) == 4);
  CHECK(Int(rank1_fm_count(30)) == Int(enumerate_partners(30).size()));
  CHECK_THROWS_AS(rank1_fm_count(1), std::invalid_argument);
}

TEST_CASE("period covering quotient orders") {
  CHECK(gamma_quotient_order(6) == 2);
  CHECK(gamma_quotient_order(2) == 1);
  CHECK(gamma_quotient_order(12) == 2);
  CHECK_THROWS_AS(gamma_quotient_order(1), std::invalid_argument);
}

TEST_CASE("hodge order divisibility check") {
  CHECK(hodge_order_check(2, 21));
  CHECK_FALSE(hodge_order_check(4, 21));
  CHECK(hodge_order_check(6, 12));
  CHECK_THROWS_AS(hodge_order_check(3, 21), std::invalid_argument);
}

TEST_CASE("rank two partner counts") {
  CHECK(rank2_fm_count(5) == 1);
  CHECK(rank2_fm_count(13) == 1);
  CHECK(rank2_fm_count(229) == 2);
  CHECK_THROWS_AS(rank2_fm_count(6), std::invalid_argument);
  CHECK_THROWS_AS(rank2_fm_count(7), std::invalid_argument);  // 3 mod 4
}

TEST_CASE("three routes to the same count agree on a sample") {
  for (int n : {2, 6, 12, 30, 36, 60}) {
    const long long expected =
        static_cast<long long>(enumerate_partners(n).size());
    REQUIRE(rank1_fm_count(n) == expected);
    REQUIRE(gamma_quotient_order(n) == expected);
  }
}
