#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "cyclocert/bigint.hpp"

namespace cyclocert::arith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimePower {
  BigInt p;
  unsigned exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

/// n = prod p^a with primes strictly increasing.
struct Factorization {
  BigInt n{1};
  std::vector<PrimePower> factors;

  BigInt recompose() const;
  bool operator==(const Factorization&) const = default;
};

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 pow_mod(u64 base, u64 exp, u64 m);
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
/// Inverse of a mod m; requires gcd(a, m) = 1.
u64 inverse_mod(u64 a, u64 m);
u64 isqrt(u64 n);

/// Deterministic for n < 2^64.
bool is_prime(u64 n);
/// Deterministic below 2^64, Miller-Rabin with 64 seeded bases above (error < 2^-128).
bool is_prime(const BigInt& n);

struct FactorOptions {
  /// Pollard-rho iterations allowed per split attempt before giving up.
  u64 rho_iteration_limit = 50'000'000;
};

/// Throws FactorizationTimeout when a composite resists the effort bound.
Factorization factorize(u64 n, const FactorOptions& opts = {});
Factorization factorize(const BigInt& n, const FactorOptions& opts = {});

std::vector<std::pair<u64, unsigned>> factor_small(u64 n);

u64 euler_phi(u64 n);
/// Multiplicative order of a mod m, gcd(a, m) = 1.
u64 multiplicative_order(u64 a, u64 m);

/// Smallest generator of (Z/qZ)*, q an odd prime power. Throws InvalidModulus otherwise.
u64 primitive_root(u64 q);

/// Returns (p, k) with q = p^k if q is a prime power, else (0, 0).
std::pair<u64, unsigned> prime_power_decompose(u64 q);

struct PrimeSearchStrategy {
  enum class Kind { Smallest, Random };
  Kind kind = Kind::Smallest;
  u64 seed = 0;
  /// Random draws come from the progression below this bound; 0 picks a default.
  u64 bound = 0;

  static PrimeSearchStrategy smallest() { return {}; }
  static PrimeSearchStrategy random(u64 seed, u64 bound = 0) {
    return {Kind::Random, seed, bound};
  }
};

/// t distinct primes p = r (mod m) outside `exclude`, in ascending order.
std::vector<u64> find_primes_in_progression(u64 r, u64 m, std::size_t t,
                                            const std::set<u64>& exclude = {},
                                            const PrimeSearchStrategy& strategy = {});

/// Kronecker symbol (a/n) for n > 0.
int kronecker(std::int64_t a, u64 n);

/// True iff n has no square factor > 1.
bool is_squarefree(u64 n);

}  // namespace cyclocert::arith
