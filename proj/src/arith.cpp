#include "cyclocert/arith.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <map>
#include <numeric>
#include <random>

#include "cyclocert/errors.hpp"

namespace cyclocert::arith {

BigInt Factorization::recompose() const {
  BigInt r = 1;
  for (const auto& [p, a] : factors) {
    BigInt pa;
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), a);
    r *= pa;
  }
  return r;
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

u64 inverse_mod(u64 a, u64 m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return static_cast<u64>(mod_floor(old_s, static_cast<std::int64_t>(m)));
}

u64 isqrt(u64 n) {
  u64 x = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (x > 0 && static_cast<u128>(x) * x > n) --x;
  while (static_cast<u128>(x + 1) * (x + 1) <= n) ++x;
  return x;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr u64 kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these twelve bases are a proven deterministic set below 2^64
  for (u64 a : kSmallPrimes) {
    if (!miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  for (u64 p : kSmallPrimes) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++s;
  }
  std::mt19937_64 rng(0x5eed1234abcdULL);
  gmp_randclass gmp_rng(gmp_randinit_default);
  gmp_rng.seed(static_cast<unsigned long>(rng()));
  const BigInt n_minus_1 = n - 1;
  for (int round = 0; round < 64; ++round) {
    BigInt a = gmp_rng.get_z_range(n - 3) + 2;
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

// Brent's cycle-finding variant of Pollard rho.
u64 pollard_brent(u64 n, u64 c, u64 limit) {
  if (n % 2 == 0) return 2;
  u64 y = 2, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
  u64 iterations = 0;
  auto f = [&](u64 v) { return static_cast<u64>((static_cast<u128>(mul_mod(v, v, n)) + c) % n); };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      g = gcd(q, n);
      k += m;
    }
    r <<= 1;
    iterations += r;
    if (iterations > limit) return 0;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

void factor_rec(u64 n, std::map<u64, unsigned>& out, const FactorOptions& opts) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 c = 1; c < 64; ++c) {
    u64 d = pollard_brent(n, c, opts.rho_iteration_limit);
    if (d == 0) break;
    if (d != n) {
      factor_rec(d, out, opts);
      factor_rec(n / d, out, opts);
      return;
    }
  }
  throw FactorizationTimeout("factorization effort bound exceeded for " + std::to_string(n));
}

BigInt pollard_brent_big(const BigInt& n, unsigned long c, u64 limit) {
  BigInt y = 2, g = 1, q = 1, x, ys, diff;
  u64 r = 1, m = 128, iterations = 0;
  auto f = [&](BigInt& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) f(y);
    u64 k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        f(y);
        diff = abs(x - y);
        q = q * diff % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r <<= 1;
    iterations += r;
    if (iterations > limit) return 0;
  }
  if (g == n) {
    do {
      f(ys);
      diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void factor_rec_big(const BigInt& n, std::map<BigInt, unsigned>& out, const FactorOptions& opts) {
  if (n == 1) return;
  if (fits_u64(n)) {
    std::map<u64, unsigned> small;
    factor_rec(to_u64(n), small, opts);
    for (auto [p, a] : small) out[big(p)] += a;
    return;
  }
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long c = 1; c < 64; ++c) {
    BigInt d = pollard_brent_big(n, c, opts.rho_iteration_limit);
    if (d == 0) break;
    if (d != n) {
      factor_rec_big(d, out, opts);
      factor_rec_big(n / d, out, opts);
      return;
    }
  }
  throw FactorizationTimeout("factorization effort bound exceeded for " + n.get_str());
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factor_small(u64 n) {
  if (n == 0) throw InvalidModulus("cannot factor 0");
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : kSmallPrimes) {
    if (n % p == 0) {
      unsigned a = 0;
      while (n % p == 0) {
        n /= p;
        ++a;
      }
      out.emplace_back(p, a);
    }
  }
  if (n > 1) {
    std::map<u64, unsigned> rest;
    factor_rec(n, rest, {});
    for (auto [p, a] : rest) out.emplace_back(p, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Factorization factorize(u64 n, const FactorOptions& opts) {
  return factorize(big(n), opts);
}

Factorization factorize(const BigInt& n, const FactorOptions& opts) {
  if (sgn(n) <= 0) throw InvalidModulus("factorize requires n >= 1");
  Factorization result;
  result.n = n;
  BigInt rest = n;
  std::map<BigInt, unsigned> found;
  for (unsigned long p = 2; p < 1000; ++p) {
    if (!is_prime(static_cast<u64>(p))) continue;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++found[BigInt(p)];
    }
  }
  factor_rec_big(rest, found, opts);
  for (const auto& [p, a] : found) result.factors.push_back({p, a});
  return result;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto [p, a] : factor_small(n)) phi = phi / p * (p - 1);
  return phi;
}

u64 multiplicative_order(u64 a, u64 m) {
  if (m == 1) return 1;
  u64 order = euler_phi(m);
  for (auto [p, e] : factor_small(order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow_mod(a, order / p, m) == 1) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

std::pair<u64, unsigned> prime_power_decompose(u64 q) {
  if (q < 2) return {0, 0};
  auto f = factor_small(q);
  if (f.size() != 1) return {0, 0};
  return f.front();
}

u64 primitive_root(u64 q) {
  auto [p, k] = prime_power_decompose(q);
  if (p == 0 || p == 2) throw InvalidModulus("primitive_root needs an odd prime power, got " + std::to_string(q));
  const u64 phi = q / p * (p - 1);
  const auto phi_factors = factor_small(phi);
  for (u64 g = 2; g < q; ++g) {
    if (g % p == 0) continue;
    bool generator = true;
    for (auto [l, e] : phi_factors) {
      if (pow_mod(g, phi / l, q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw InvalidModulus("no primitive root found for " + std::to_string(q));
}

std::vector<u64> find_primes_in_progression(u64 r, u64 m, std::size_t t, const std::set<u64>& exclude,
                                            const PrimeSearchStrategy& strategy) {
  if (m == 0 || gcd(r % m, m) != 1) throw InvalidModulus("progression residue must be coprime to the modulus");
  std::vector<u64> primes;
  if (t == 0) return primes;
  r %= m;
  if (strategy.kind == PrimeSearchStrategy::Kind::Smallest) {
    for (u64 p = r; primes.size() < t; p += m) {
      if (is_prime(p) && !exclude.contains(p)) primes.push_back(p);
    }
    return primes;
  }
  u64 bound = strategy.bound != 0 ? strategy.bound : std::max<u64>(1'000'000, m * 4000 * t);
  std::mt19937_64 rng(strategy.seed);
  std::set<u64> chosen;
  u64 attempts = 0;
  while (chosen.size() < t) {
    std::uniform_int_distribution<u64> dist(0, bound / m);
    const u64 p = r + dist(rng) * m;
    if (is_prime(p) && !exclude.contains(p)) chosen.insert(p);
    if (++attempts > 200'000 * t) {
      bound *= 2;
      attempts = 0;
    }
  }
  return {chosen.begin(), chosen.end()};
}

int kronecker(std::int64_t a, u64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const std::int64_t a8 = mod_floor(a, 8);
    if (a8 % 2 == 0) return 0;
    if (a8 == 3 || a8 == 5) result = -result;
  }
  // Jacobi symbol for odd n
  std::int64_t aa = mod_floor(a, static_cast<std::int64_t>(n));
  u64 x = static_cast<u64>(aa), y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      if (y % 8 == 3 || y % 8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (auto [p, a] : factor_small(n)) {
    if (a > 1) return false;
  }
  return true;
}

}  // namespace cyclocert::arith
