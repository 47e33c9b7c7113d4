#include <algorithm>
#include <random>

#include "cyclocert/arith.hpp"
#include "cyclocert/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cyclocert;
using namespace cyclocert::arith;

TEST_CASE("is_prime examples") {
  CHECK_FALSE(is_prime(u64{1}));
  CHECK(is_prime(u64{29}));
  CHECK_FALSE(is_prime(u64{32045}));
  CHECK_FALSE(is_prime(u64{0}));
  CHECK(is_prime(u64{2}));
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
  const auto sieve = oracle::sieve(1'000'000);
  for (u64 n = 0; n <= 1'000'000; ++n) {
    if (is_prime(n) != sieve[n]) {
      FAIL("mismatch at " << n);
    }
  }
}

TEST_CASE("is_prime on large known values") {
  CHECK(is_prime(u64{18446744073709551557ULL}));  // largest 64-bit prime
  CHECK_FALSE(is_prime(u64{3825123056546413051ULL}));  // strong pseudoprime to bases 2..23
  BigInt m127 = (BigInt(1) << 127) - 1;
  CHECK(is_prime(m127));
  CHECK_FALSE(is_prime(BigInt(m127 * 3)));
}

TEST_CASE("factorize examples") {
  auto f = factorize(u64{420});
  std::vector<PrimePower> expect{{2, 2}, {3, 1}, {5, 1}, {7, 1}};
  CHECK(f.factors == expect);
  CHECK(factorize(u64{1}).factors.empty());
  std::vector<PrimePower> f91{{7, 1}, {13, 1}};
  CHECK(factorize(u64{91}).factors == f91);
  CHECK_THROWS_AS(factorize(BigInt(0)), InvalidModulus);
}

TEST_CASE("factorize recomposes and yields increasing primes") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 400; ++k) {
    const u64 n = 1 + rng() % 1'000'000'000'000'000'000ULL;
    auto f = factorize(n);
    CHECK(f.recompose() == big(n));
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      CHECK(is_prime(f.factors[i].p));
      CHECK(f.factors[i].exponent >= 1);
      if (i > 0) CHECK(f.factors[i - 1].p < f.factors[i].p);
    }
  }
  // beyond 64 bits: Mersenne prime 2^61-1 times 10^9+7 times 7^2
  BigInt n = big(2305843009213693951ULL) * BigInt(1000000007) * 49;
  auto f = factorize(n);
  CHECK(f.recompose() == n);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0] == PrimePower{7, 2});
}

TEST_CASE("primitive_root is the smallest generator") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(9) == 2);
  for (u64 q : {3, 7, 9, 11, 13, 25, 27, 49, 121, 169, 243, 625, 40487, 1681}) {
    const u64 g = primitive_root(q);
    CHECK(g == oracle::smallest_generator(q));
  }
  CHECK_THROWS_AS(primitive_root(8), InvalidModulus);
  CHECK_THROWS_AS(primitive_root(15), InvalidModulus);
  CHECK_THROWS_AS(primitive_root(1), InvalidModulus);
}

TEST_CASE("find_primes_in_progression examples") {
  CHECK(find_primes_in_progression(1, 4, 4) == std::vector<u64>{5, 13, 17, 29});
  CHECK(find_primes_in_progression(1, 8, 5) == std::vector<u64>{17, 41, 73, 89, 97});
  CHECK(find_primes_in_progression(1, 4, 2, {5}) == std::vector<u64>{13, 17});
}

TEST_CASE("find_primes_in_progression matches a sieve scan") {
  const auto sieve = oracle::sieve(200'000);
  for (u64 m : {3, 4, 6, 8, 10, 12, 16, 30}) {
    for (u64 r = 1; r < m; ++r) {
      if (gcd(r, m) != 1) continue;
      std::vector<u64> expect;
      for (u64 p = r; expect.size() < 6; p += m)
        if (sieve[p]) expect.push_back(p);
      CHECK(find_primes_in_progression(r, m, 6) == expect);
    }
  }
}

TEST_CASE("random strategy returns distinct valid primes avoiding the exclusion set") {
  const std::set<u64> exclude{5, 13, 17};
  for (u64 seed = 0; seed < 20; ++seed) {
    auto ps = find_primes_in_progression(1, 12, 7, exclude, PrimeSearchStrategy::random(seed));
    CHECK(ps.size() == 7);
    CHECK(std::is_sorted(ps.begin(), ps.end()));
    CHECK(std::adjacent_find(ps.begin(), ps.end()) == ps.end());
    for (u64 p : ps) {
      CHECK(is_prime(p));
      CHECK(p % 12 == 1);
      CHECK_FALSE(exclude.contains(p));
    }
  }
  auto a = find_primes_in_progression(1, 12, 5, {}, PrimeSearchStrategy::random(1));
  auto b = find_primes_in_progression(1, 12, 5, {}, PrimeSearchStrategy::random(2));
  CHECK(a != b);
}

TEST_CASE("kronecker symbol matches Euler's criterion at odd primes") {
  for (u64 p : {3, 5, 7, 11, 13, 101, 103}) {
    for (std::int64_t a = -50; a <= 50; ++a) {
      const std::int64_t am = mod_floor(a, static_cast<std::int64_t>(p));
      int expect = 0;
      if (am != 0) expect = pow_mod(static_cast<u64>(am), (p - 1) / 2, p) == 1 ? 1 : -1;
      CHECK(kronecker(a, p) == expect);
    }
  }
  // (D/2) for D = 1 mod 8 is +1, D = 5 mod 8 is -1
  CHECK(kronecker(17, 2) == 1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(12, 2) == 0);
}

TEST_CASE("multiplicative order and phi") {
  CHECK(euler_phi(420) == 96);
  CHECK(euler_phi(1) == 1);
  CHECK(multiplicative_order(5, 13) == 4);
  CHECK(multiplicative_order(2, 9) == 6);
  CHECK(is_squarefree(105));
  CHECK_FALSE(is_squarefree(12));
}
