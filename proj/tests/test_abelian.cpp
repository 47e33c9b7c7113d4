#include <random>

#include "cyclocert/abelian.hpp"
#include "cyclocert/errors.hpp"
#include "cyclocert/snf.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cyclocert;
using namespace cyclocert::abelian;

namespace {

FinAbGroup G(std::initializer_list<long> orders) { return FinAbGroup::from_cyclic_orders(orders); }

bool is_divisor_chain(const std::vector<BigInt>& d) {
  for (std::size_t i = 1; i < d.size(); ++i)
    if (sgn(d[i - 1]) == 0 || d[i] % d[i - 1] != 0) return false;
  return true;
}

void check_smith(const IntMatrix& a, const SmithForm& s) {
  REQUIRE(s.U * a * s.V == s.D);
  CHECK(abs(s.U.determinant()) == 1);
  CHECK(abs(s.V.determinant()) == 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(sgn(s.D(i, j)) == 0);
  auto d = s.diagonal();
  for (const auto& x : d) CHECK(sgn(x) > 0);
  CHECK(is_divisor_chain(d));
  for (std::size_t i = s.rank; i < std::min(a.rows(), a.cols()); ++i) CHECK(sgn(s.D(i, i)) == 0);
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
  auto s = smith_normal_form(IntMatrix{{4, 0}, {0, 6}});
  CHECK(s.D == (IntMatrix{{2, 0}, {0, 12}}));
  check_smith(IntMatrix{{4, 0}, {0, 6}}, s);
  CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix{{2}}).D == IntMatrix{{2}});
  CHECK(smith_normal_form(IntMatrix(0, 3)).rank == 0);
  CHECK(smith_normal_form(IntMatrix(2, 3)).rank == 0);
}

TEST_CASE("smith_normal_form invariants on random matrices up to 30x30") {
  std::mt19937_64 rng(2024);
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {2, 5}, {5, 2}, {6, 6}, {10, 7},
                                                                {12, 12}, {20, 25}, {30, 30}};
  for (auto [r, c] : shapes) {
    for (long bound : {3L, 1'000'000L}) {
      auto a = random_matrix(rng, r, c, bound);
      auto par = smith_normal_form(a);
      check_smith(a, par);
      auto ser = smith_normal_form(a, {.parallel = false});
      auto ref = smith_normal_form_reference(a);
      check_smith(a, ref);
      CHECK(par.D == ser.D);
      CHECK(par.D == ref.D);
    }
  }
}

TEST_CASE("smith_normal_form on rank-deficient and structured matrices") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 40; ++k) {
    // product of thin factors has rank <= 3
    auto a = random_matrix(rng, 8, 3, 9) * random_matrix(rng, 3, 9, 9);
    auto s = smith_normal_form(a);
    check_smith(a, s);
    CHECK(s.rank <= 3);
    CHECK(s.D == smith_normal_form_reference(a).D);
  }
}

TEST_CASE("smith_normal_form_full tracks inverse transforms") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto a = random_matrix(rng, 4 + k % 3, 3 + k % 4, 50);
    auto s = smith_normal_form_full(a);
    CHECK(s.U * s.U_inverse == IntMatrix::identity(a.rows()));
    CHECK(s.V * s.V_inverse == IntMatrix::identity(a.cols()));
    CHECK(s.U * a * s.V == s.D);
  }
}

TEST_CASE("parallel sweeps match the serial kernel on large blocks") {
  std::mt19937_64 rng(11);
  auto a = random_matrix(rng, 60, 400, 2);
  auto par = smith_normal_form(a, {.parallel = true, .parallel_threshold = 64});
  auto ser = smith_normal_form(a, {.parallel = false});
  CHECK(par.D == ser.D);
  CHECK(par.U * a * par.V == par.D);
}

TEST_CASE("hermite_normal_form_rows is canonical for the row lattice") {
  IntMatrix a{{2, 0}, {0, 2}, {1, 1}};
  IntMatrix b{{1, 1}, {0, 2}};
  IntMatrix c{{3, 1}, {1, 1}, {4, 4}};
  auto ha = hermite_normal_form_rows(a);
  CHECK(ha == hermite_normal_form_rows(b));
  CHECK(ha == hermite_normal_form_rows(c));
  CHECK(ha == (IntMatrix{{1, 1}, {0, 2}}));
}

TEST_CASE("from_presentation examples") {
  CHECK(from_presentation(2, IntMatrix{{2, 0}, {0, 4}}) == G({2, 4}));
  CHECK(from_presentation(1, IntMatrix{{1}}).is_trivial());
  // columns (2,0), (0,2), (1,1)
  IntMatrix rel{{2, 0, 1}, {0, 2, 1}};
  auto q = from_presentation(2, rel);
  CHECK(q == G({2}));
  // brute-force coset count: Z^2 / L with 2Z^2 inside L, so enumerate (Z/2)^2 / image of L
  oracle::Brute box({2, 2});
  auto h = box.closure({box.encode({1, 1})});
  CHECK(oracle::quotient_profile(box, h) == oracle::profile(q));
  CHECK_THROWS_AS(from_presentation(2, IntMatrix{{2}, {0}}), InfiniteGroup);
  CHECK_THROWS_AS(from_presentation(1, IntMatrix(1, 0)), InfiniteGroup);
}

TEST_CASE("FinAbGroup normalization") {
  CHECK(G({4, 6}).invariant_factors() == std::vector<BigInt>{2, 12});
  CHECK(G({1, 1}).is_trivial());
  CHECK(G({6, 4, 10}) == G({2, 2, 60}));
  CHECK_THROWS(FinAbGroup::from_invariant_factors({4, 6}));
  CHECK_THROWS(FinAbGroup::from_invariant_factors({1}));
  CHECK(G({2, 12}).order() == 24);
  CHECK(G({2, 12}).exponent() == 12);
}

TEST_CASE("direct_sum examples and laws") {
  CHECK(direct_sum(G({2}), G({3})) == G({6}));
  CHECK(direct_sum(G({}), G({5})) == G({5}));
  CHECK(direct_sum(G({2}), G({2})) == G({2, 2}));
  auto types = oracle::all_abelian_types(16);
  for (const auto& x : types) {
    for (const auto& y : types) {
      auto a = oracle::group_of(x), b = oracle::group_of(y);
      auto ab = direct_sum(a, b);
      CHECK(ab == direct_sum(b, a));
      CHECK(ab.order() == a.order() * b.order());
    }
  }
  for (std::size_t i = 0; i < types.size(); i += 3)
    for (std::size_t j = 1; j < types.size(); j += 4)
      for (std::size_t k = 2; k < types.size(); k += 5) {
        auto a = oracle::group_of(types[i]), b = oracle::group_of(types[j]), c = oracle::group_of(types[k]);
        CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
      }
}

TEST_CASE("exterior_square examples") {
  CHECK(exterior_square(G({3, 3, 3, 3})) == G({3, 3, 3, 3, 3, 3}));
  CHECK(exterior_square(G({12})).is_trivial());
  CHECK(exterior_square(G({2, 4})) == G({2}));
  CHECK(exterior_square(G({})).is_trivial());
  CHECK(exterior_square(G({6, 6})) == G({6}));
}

TEST_CASE("embeds_in examples") {
  CHECK(embeds_in(G({2, 4}), G({4, 4})));
  CHECK_FALSE(embeds_in(G({2, 2}), G({4})));
  CHECK(embeds_in(G({}), G({7})));
  CHECK(embeds_in(G({}), G({})));
  CHECK_FALSE(embeds_in(G({2}), G({})));
}

TEST_CASE("embeds_in agrees with exhaustive subgroup enumeration for |B| <= 64") {
  auto types = oracle::all_abelian_types(64);
  std::vector<oracle::Profile> type_profiles;
  for (const auto& t : types) type_profiles.push_back(oracle::profile(oracle::group_of(t)));
  for (const auto& tb : types) {
    oracle::Brute b(tb);
    std::set<oracle::Profile> sub_profiles;
    for (const auto& h : b.all_subgroups()) sub_profiles.insert(oracle::profile_of_subset(b, h));
    const auto gb = oracle::group_of(tb);
    for (std::size_t i = 0; i < types.size(); ++i) {
      const bool expect = sub_profiles.contains(type_profiles[i]);
      const bool got = embeds_in(oracle::group_of(types[i]), gb);
      if (expect != got) FAIL_CHECK("A=" << to_string(oracle::group_of(types[i])) << " B=" << to_string(gb));
    }
  }
}

TEST_CASE("embeds_in is transitive on sampled triples") {
  auto types = oracle::all_abelian_types(48);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3000; ++k) {
    auto a = oracle::group_of(types[rng() % types.size()]);
    auto b = oracle::group_of(types[rng() % types.size()]);
    auto c = oracle::group_of(types[rng() % types.size()]);
    if (embeds_in(a, b) && embeds_in(b, c)) CHECK(embeds_in(a, c));
  }
}

TEST_CASE("quotient_surplus examples") {
  auto z3_6 = FinAbGroup::homocyclic(3, 6);
  CHECK(quotient_surplus(z3_6, 5, 3) == 1);
  CHECK(quotient_surplus(z3_6, 0, 3) == 6);
  CHECK(quotient_surplus(G({2, 4, 8}), 1, 8) == 0);
}

TEST_CASE("quotient_surplus contract holds by brute force for |B| <= 32") {
  std::mt19937_64 rng(17);
  for (const auto& tb : oracle::all_abelian_types(32)) {
    if (tb.empty()) continue;
    const auto gb = oracle::group_of(tb);
    oracle::Brute brute(tb);
    const auto pres = Presentation::of(gb);
    for (std::size_t s = 0; s <= 2; ++s) {
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<std::size_t> picks;
        IntMatrix rel = pres.relations;
        for (std::size_t e = 0; e < s; ++e) {
          const std::size_t x = rng() % brute.size;
          picks.push_back(x);
          std::vector<BigInt> coords;
          for (long c : brute.decode(x)) coords.emplace_back(c);
          rel = rel.hconcat(IntMatrix::from_columns(coords.size(), {coords}));
        }
        const auto quotient = from_presentation(pres.generators, rel);
        CHECK(oracle::profile(quotient) == oracle::quotient_profile(brute, brute.closure(picks)));
        for (long m = 2; m <= tb.back(); ++m) {
          const std::size_t surplus = quotient_surplus(gb, s, m);
          CHECK(embeds_in(FinAbGroup::homocyclic(m, surplus), quotient));
        }
      }
    }
  }
}

TEST_CASE("min_generators examples") {
  CHECK(min_generators(G({2, 4, 8})) == 3);
  CHECK(min_generators(G({})) == 0);
  CHECK(min_generators(FinAbGroup::homocyclic(2, 10)) == 10);
}

TEST_CASE("quotient_by_element examples") {
  // (Z/8)* on generators -1, 5; the element -1 has coordinates (1, 0)
  Presentation units8{2, IntMatrix{{2, 0}, {0, 2}}};
  CHECK(quotient_by_element(units8, {1, 0}) == G({2}));
  auto g = G({2, 6});
  CHECK(quotient_by_element(Presentation::of(g), {0, 0}) == g);
  // (Z/5)* = <2>, -1 = 4 = 2^2
  CHECK(quotient_by_element(Presentation::of(G({4})), {2}) == G({2}));
}

TEST_CASE("lattice_quotient and integer_kernel") {
  // Z^2 / 2Z^2
  CHECK(lattice_quotient(IntMatrix::identity(2), IntMatrix{{2, 0}, {0, 2}}) == G({2, 2}));
  // 2Z inside 2Z is trivial; 4Z inside 2Z is Z/2
  CHECK(lattice_quotient(IntMatrix{{2}}, IntMatrix{{4}}) == G({2}));
  CHECK_THROWS_AS(lattice_quotient(IntMatrix{{2}}, IntMatrix{{3}}), PreconditionFailed);
  CHECK_THROWS_AS(lattice_quotient(IntMatrix::identity(2), IntMatrix{{1}, {0}}), InfiniteResult);
  auto k = integer_kernel(IntMatrix{{1, 1, 1}});
  CHECK(k.cols() == 2);
  CHECK((IntMatrix{{1, 1, 1}} * k).is_zero());
  CHECK(lattice_quotient(k, IntMatrix{{1, 0}, {-1, 1}, {0, -1}}).is_trivial());
}
