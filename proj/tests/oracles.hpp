#pragma once
// Test-only brute-force oracles. Nothing here calls into the library's algorithms
// beyond plain data types, so these stay independent of the code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "cyclocert/abelian.hpp"

namespace oracle {

using u64 = std::uint64_t;

inline std::vector<bool> sieve(u64 n) {
  std::vector<bool> is_p(n + 1, true);
  is_p[0] = false;
  if (n >= 1) is_p[1] = false;
  for (u64 p = 2; p * p <= n; ++p)
    if (is_p[p])
      for (u64 k = p * p; k <= n; k += p) is_p[k] = false;
  return is_p;
}

inline u64 order_mod(u64 a, u64 n) {
  u64 x = a % n, k = 1;
  while (x != 1 % n) {
    x = x * a % n;
    ++k;
    if (k > n) return 0;
  }
  return k;
}

inline u64 phi(u64 n) {
  u64 c = 0;
  for (u64 a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) ++c;
  return c;
}

inline u64 smallest_generator(u64 q) {
  const u64 f = phi(q);
  for (u64 g = 1; g < q; ++g)
    if (std::gcd(g, q) == 1 && order_mod(g, q) == f) return g;
  return 0;
}

/// Explicit finite abelian group Z/o1 x ... x Z/ok, elements as mixed-radix indices.
struct Brute {
  std::vector<long> orders;
  std::size_t size = 1;

  std::vector<std::uint32_t> table;  // addition table when small enough

  explicit Brute(std::vector<long> o) : orders(std::move(o)) {
    for (long x : orders) size *= static_cast<std::size_t>(x);
    if (size <= 1024) {
      table.resize(size * size);
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) table[a * size + b] = static_cast<std::uint32_t>(add_slow(a, b));
    }
  }
  std::vector<long> decode(std::size_t idx) const {
    std::vector<long> v(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      v[i] = static_cast<long>(idx % orders[i]);
      idx /= orders[i];
    }
    return v;
  }
  std::size_t encode(const std::vector<long>& v) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + static_cast<std::size_t>(((v[i] % orders[i]) + orders[i]) % orders[i]);
    return idx;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    if (!table.empty()) return table[a * size + b];
    return add_slow(a, b);
  }
  std::size_t add_slow(std::size_t a, std::size_t b) const {
    auto x = decode(a), y = decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return encode(x);
  }
  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1, x = a;
    while (x != 0) {
      x = add(x, a);
      ++k;
    }
    return k;
  }
  /// Subgroup generated by `gens` as a membership mask.
  std::vector<bool> closure(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(size, false);
    std::vector<std::size_t> stack{0};
    in[0] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto g : gens) {
        auto y = add(x, g);
        if (!in[y]) {
          in[y] = true;
          stack.push_back(y);
        }
      }
    }
    return in;
  }
  /// Every subgroup, as membership masks.
  std::vector<std::vector<bool>> all_subgroups() const {
    std::set<std::vector<bool>> seen;
    std::vector<std::vector<bool>> out;
    std::vector<std::vector<bool>> frontier{closure({})};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
      std::vector<std::vector<bool>> next;
      for (const auto& h : frontier) {
        out.push_back(h);
        std::vector<std::size_t> gens;
        for (std::size_t i = 0; i < size; ++i)
          if (h[i]) gens.push_back(i);
        for (std::size_t g = 0; g < size; ++g) {
          if (h[g]) continue;
          // <h, g> = union of the cosets h + k g
          std::vector<bool> h2 = h;
          std::size_t kg = g;
          while (kg != 0) {
            for (auto x : gens) h2[add(x, kg)] = true;
            kg = add(kg, g);
          }
          if (seen.insert(h2).second) next.push_back(h2);
        }
      }
      frontier = std::move(next);
    }
    return out;
  }
};

/// Number of elements of each order; determines a finite abelian group up to isomorphism.
using Profile = std::map<std::size_t, std::size_t>;

inline Profile profile_of_subset(const Brute& g, const std::vector<bool>& mask) {
  Profile p;
  for (std::size_t i = 0; i < g.size; ++i)
    if (mask[i]) ++p[g.element_order(i)];
  return p;
}

inline Profile profile(const cyclocert::abelian::FinAbGroup& g) {
  std::vector<long> o;
  for (const auto& d : g.invariant_factors()) o.push_back(d.get_si());
  Brute b(o);
  return profile_of_subset(b, std::vector<bool>(b.size, true));
}

/// Order profile of the quotient B / H (H given as mask).
inline Profile quotient_profile(const Brute& g, const std::vector<bool>& h) {
  Profile p;
  std::set<std::vector<bool>> cosets_seen;
  for (std::size_t x = 0; x < g.size; ++x) {
    std::vector<bool> coset(g.size, false);
    for (std::size_t y = 0; y < g.size; ++y)
      if (h[y]) coset[g.add(x, y)] = true;
    if (!cosets_seen.insert(coset).second) continue;
    std::size_t k = 1, z = x;
    while (!h[z]) {
      z = g.add(z, x);
      ++k;
    }
    ++p[k];
  }
  return p;
}

/// All divisor chains d1 | ... | dk with product <= max_order (including the trivial group).
inline std::vector<std::vector<long>> all_abelian_types(long max_order) {
  std::vector<std::vector<long>> out;
  std::function<void(std::vector<long>&, long)> rec = [&](std::vector<long>& chain, long prod) {
    out.push_back(chain);
    const long last = chain.empty() ? 1 : chain.back();
    for (long d = std::max(2L, last); prod * d <= max_order; d += 1) {
      if (d % last != 0) continue;
      chain.push_back(d);
      rec(chain, prod * d);
      chain.pop_back();
    }
  };
  // invariant factors are listed smallest first; each new factor must be a multiple of the previous
  std::vector<long> chain;
  rec(chain, 1);
  return out;
}

inline cyclocert::abelian::FinAbGroup group_of(const std::vector<long>& chain) {
  std::vector<cyclocert::BigInt> v;
  for (long x : chain) v.emplace_back(x);
  return cyclocert::abelian::FinAbGroup::from_invariant_factors(v);
}

}  // namespace oracle
