#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "cyclocert/cohomology.hpp"
#include "cyclocert/errors.hpp"
#include "doctest.h"
#include "module_gen.hpp"
#include "oracles.hpp"

using namespace cyclocert;
using namespace cyclocert::cohomology;
using abelian::FinAbGroup;
using testgen::random_cyclic_module;

namespace {

FinAbGroup G(std::initializer_list<long> orders) { return FinAbGroup::from_cyclic_orders(orders); }

GModule z_with(long sign) {
  GModule m;
  m.generator_orders = {2};
  m.rank = 1;
  m.relations = IntMatrix(1, 0);
  m.actions = {IntMatrix{{sign}}};
  return m;
}

std::vector<std::uint64_t> orders_of(const FinAbGroup& g) {
  std::vector<std::uint64_t> o;
  for (const auto& d : g.invariant_factors()) o.push_back(to_u64(d));
  return o;
}

/// Brute-force Tate groups of a module whose relations contain m Z^r: works inside (Z/m)^r.
struct BruteTate {
  oracle::Profile h0, h_minus1;
};

long mod_entry(const BigInt& x, long m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.get_si();
}

BruteTate brute_tate(const GModule& mod, long m) {
  const std::size_t r = mod.rank;
  oracle::Brute box(std::vector<long>(r, m));
  auto apply = [&](const IntMatrix& a, std::size_t x) {
    const auto v = box.decode(x);
    std::vector<long> w(r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) w[i] += mod_entry(a(i, j), m) * v[j];
    return box.encode(w);
  };
  std::vector<std::size_t> rel_gens;
  for (std::size_t j = 0; j < mod.relations.cols(); ++j) {
    std::vector<long> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = mod_entry(mod.relations(i, j), m);
    rel_gens.push_back(box.encode(v));
  }
  const auto lat = box.closure(rel_gens);
  auto neg = [&](std::size_t x) {
    auto v = box.decode(x);
    for (auto& c : v) c = -c;
    return box.encode(v);
  };
  // group elements as matrices, then the norm as a map on (Z/m)^r
  std::vector<IntMatrix> elems{IntMatrix::identity(r)};
  for (std::uint64_t k = 1; k < mod.generator_orders[0]; ++k) elems.push_back(elems.back() * mod.actions[0]);
  auto norm = [&](std::size_t x) {
    std::size_t acc = 0;
    for (const auto& g : elems) acc = box.add(acc, apply(g, x));
    return acc;
  };
  auto in_lat = [&](std::size_t x) { return static_cast<bool>(lat[x]); };

  std::vector<bool> fixed(box.size), kernel_n(box.size);
  std::vector<std::size_t> aug_gens = rel_gens, norm_gens = rel_gens;
  for (std::size_t x = 0; x < box.size; ++x) {
    const std::size_t ax = apply(mod.actions[0], x);
    fixed[x] = in_lat(box.add(ax, neg(x)));
    kernel_n[x] = in_lat(norm(x));
    aug_gens.push_back(box.add(ax, neg(x)));
    norm_gens.push_back(norm(x));
  }
  const auto im_n = box.closure(norm_gens);
  const auto im_aug = box.closure(aug_gens);
  auto subquotient = [&](const std::vector<bool>& big, const std::vector<bool>& small) {
    oracle::Profile p;
    std::size_t coset_size = 0;
    for (std::size_t x = 0; x < box.size; ++x) coset_size += small[x];
    for (std::size_t x = 0; x < box.size; ++x) {
      if (!big[x]) continue;
      std::size_t k = 1, y = x;
      while (!small[y]) {
        y = box.add(y, x);
        ++k;
      }
      ++p[k];
    }
    for (auto& [k, c] : p) c /= coset_size;
    return p;
  };
  return {subquotient(fixed, im_n), subquotient(kernel_n, im_aug)};
}

}  // namespace

TEST_CASE("norm_map examples") {
  CHECK(norm_map(z_with(-1)) == IntMatrix{{0}});
  CHECK(norm_map(z_with(1)) == IntMatrix{{2}});
  GModule trivial;
  trivial.rank = 2;
  trivial.relations = IntMatrix(2, 0);
  CHECK(norm_map(trivial) == IntMatrix::identity(2));
}

TEST_CASE("tate_h_minus1 examples") {
  CHECK(tate_h_minus1(z_with(-1)) == G({2}));
  CHECK(tate_h_minus1(z_with(1)).is_trivial());
  CHECK(tate_h_minus1(regular_module({2})).is_trivial());
}

TEST_CASE("tate_h0 examples") {
  CHECK(tate_h0(z_with(1)) == G({2}));
  CHECK(tate_h0(regular_module({2})).is_trivial());
  GModule trivial;
  trivial.rank = 2;
  trivial.relations = IntMatrix{{3, 0}, {0, 5}};
  CHECK(tate_h0(trivial).is_trivial());
  CHECK(tate_h_minus1(trivial).is_trivial());
}

TEST_CASE("Tate groups of a finite trivial module over Z/n") {
  // M = Z/6 with trivial Z/4 action: H0 = M/4M = Z/2, H^-1 = M[4] = Z/2
  GModule m;
  m.generator_orders = {4};
  m.rank = 1;
  m.relations = IntMatrix{{6}};
  m.actions = {IntMatrix{{1}}};
  CHECK(tate_h0(m) == G({2}));
  CHECK(tate_h_minus1(m) == G({2}));
}

TEST_CASE("validate rejects malformed modules") {
  GModule bad = z_with(2);  // 2 has infinite order on Z
  CHECK_THROWS_AS(bad.validate(), InvalidModule);
  GModule wrong_order = z_with(-1);
  wrong_order.generator_orders = {3};
  CHECK_THROWS_AS(wrong_order.validate(), InvalidModule);
  GModule non_stable;
  non_stable.generator_orders = {2};
  non_stable.rank = 2;
  non_stable.relations = IntMatrix{{2}, {0}};
  non_stable.actions = {IntMatrix{{0, 1}, {1, 0}}};  // swaps, moving 2e1 to 2e2
  CHECK_THROWS_AS(non_stable.validate(), InvalidModule);
  GModule noncommuting;
  noncommuting.generator_orders = {2, 2};
  noncommuting.rank = 2;
  noncommuting.relations = IntMatrix(2, 0);
  noncommuting.actions = {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, 1}}};
  CHECK_THROWS_AS(noncommuting.validate(), InvalidModule);
  GModule missing = z_with(-1);
  missing.actions.clear();
  CHECK_THROWS_AS(missing.validate(), InvalidModule);
}

TEST_CASE("Tate groups match brute-force subquotients of small finite modules") {
  std::mt19937_64 rng(11);
  int compared = 0;
  for (int rep = 0; rep < 300; ++rep) {
    auto mod = random_cyclic_module(rng, 6, 6);
    const long m = mod.relations(0, 0).get_si();
    const auto brute = brute_tate(mod, m);
    CHECK(oracle::profile(tate_h0(mod)) == brute.h0);
    CHECK(oracle::profile(tate_h_minus1(mod)) == brute.h_minus1);
    ++compared;
  }
  CHECK(compared > 200);
}

TEST_CASE("Herbrand quotient of finite modules over cyclic groups is 1") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 300; ++rep) {
    auto mod = random_cyclic_module(rng, 20, 20);
    CHECK(tate_h0(mod).order() == tate_h_minus1(mod).order());
  }
}

TEST_CASE("regular modules are cohomologically trivial for |G| <= 8") {
  for (const auto& chain : oracle::all_abelian_types(8)) {
    const auto m = regular_module(orders_of(oracle::group_of(chain)));
    CHECK(tate_h0(m).is_trivial());
    CHECK(tate_h_minus1(m).is_trivial());
  }
}

TEST_CASE("direct sums of modules give direct sums of Tate groups") {
  std::mt19937_64 rng(13);
  int done = 0;
  for (int rep = 0; rep < 200 && done < 60; ++rep) {
    auto a = random_cyclic_module(rng, 12, 10);
    auto b = random_cyclic_module(rng, 12, 10);
    if (a.generator_orders != b.generator_orders) continue;
    auto s = direct_sum(a, b);
    CHECK(tate_h0(s) == abelian::direct_sum(tate_h0(a), tate_h0(b)));
    CHECK(tate_h_minus1(s) == abelian::direct_sum(tate_h_minus1(a), tate_h_minus1(b)));
    ++done;
  }
  CHECK(done >= 20);
}

TEST_CASE("Tate groups are annihilated by |G|") {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 100; ++rep) {
    auto mod = random_cyclic_module(rng, 20, 20);
    const BigInt n = big(mod.group_order());
    CHECK(n % tate_h0(mod).exponent() == 0);
    CHECK(n % tate_h_minus1(mod).exponent() == 0);
  }
}

TEST_CASE("group size bound is configurable") {
  ::setenv("CYCLOCERT_MAX_GROUP", "3", 1);
  CHECK(max_group_order() == 3);
  CHECK_THROWS_AS(norm_map(regular_module({4})), GroupTooLarge);
  ::unsetenv("CYCLOCERT_MAX_GROUP");
  CHECK(max_group_order() == 10000);
  CHECK_NOTHROW(norm_map(regular_module({4})));
}

TEST_CASE("h2_bar_oracle examples") {
  CHECK(h2_bar_oracle(G({2, 2})) == G({2}));
  for (long n : {1, 2, 3, 5, 7, 12}) CHECK(h2_bar_oracle(G({n})).is_trivial());
  CHECK(h2_bar_oracle(G({2, 4})) == G({2}));
  CHECK_THROWS_AS(h2_bar_oracle(G({17})), GroupTooLarge);
}

TEST_CASE("h2_bar_oracle equals the exterior square for |G| <= 9") {
  for (const auto& chain : oracle::all_abelian_types(9)) {
    const auto g = oracle::group_of(chain);
    CHECK(h2_bar_oracle(g) == abelian::exterior_square(g));
  }
}

TEST_CASE("schur_multiplier and local_schur_rank") {
  CHECK(schur_multiplier(G({6, 6})) == G({6}));
  CHECK(schur_multiplier(FinAbGroup::homocyclic(2, 4)) == FinAbGroup::homocyclic(2, 6));
  CHECK(schur_multiplier(G({})).is_trivial());
  CHECK(schur_multiplier(G({6})) == h2_bar_oracle(G({6})));
  CHECK(local_schur_rank(G({12})) == 0);
  CHECK(local_schur_rank(G({4, 4})) == 1);
  CHECK(local_schur_rank(G({2, 2, 4})) == 3);
}
