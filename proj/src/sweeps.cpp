#include "cyclocert/sweeps.hpp"

#include <algorithm>
#include <exception>
#include <random>

#include "cyclocert/arith.hpp"
#include "cyclocert/characters.hpp"
#include "cyclocert/cohomology.hpp"
#include "cyclocert/quadratic.hpp"

namespace cyclocert::sweeps {

namespace {

using arith::u64;
using characters::CharacterGroup;

/// Runs body(i) for i in [0, count), in parallel or not; rethrows the first exception afterwards.
template <typename Body>
void for_range(std::size_t count, bool parallel, Body&& body) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

ExponentSweep exponent_one(u64 n) {
  ExponentSweep out;
  out.moduli = 1;
  const auto dual = CharacterGroup::full_dual(n);
  // lifted duals of the admissible levels m | n
  std::vector<std::pair<u64, CharacterGroup>> levels;
  for (u64 m = 1; m <= n; ++m) {
    if (n % m != 0 || m % 4 == 2) continue;
    const auto dual_m = CharacterGroup::full_dual(m);
    std::vector<characters::DirichletCharacter> lifted;
    for (const auto& chi : dual_m.basis()) lifted.push_back(characters::lift(chi, n));
    levels.emplace_back(m, characters::group_generated(lifted, n));
  }
  for (const auto& x : characters::all_subgroups(dual, dual.order())) {
    ++out.subgroups;
    for (const auto& [m, lifted] : levels) {
      if (!x.contains(lifted)) continue;
      ++out.checks;
      const u64 d = x.order() / arith::euler_phi(m);
      const auto check = characters::exponent_check(x, m, d);
      if (check.ok) continue;
      std::string desc = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " X=<";
      for (std::size_t i = 0; i < x.basis().size(); ++i) desc += (i ? "," : "") + x.basis()[i].to_string();
      out.counterexamples.push_back(desc + ">");
    }
  }
  return out;
}

ExponentSweep exponent_run(u64 n_max, bool parallel) {
  std::vector<u64> moduli;
  for (u64 n = 1; n <= n_max; ++n)
    if (n % 4 != 2) moduli.push_back(n);
  std::vector<ExponentSweep> parts(moduli.size());
  for_range(moduli.size(), parallel, [&](std::size_t i) { parts[i] = exponent_one(moduli[i]); });
  ExponentSweep total;
  for (const auto& p : parts) {
    total.moduli += p.moduli;
    total.subgroups += p.subgroups;
    total.checks += p.checks;
    total.counterexamples.insert(total.counterexamples.end(), p.counterexamples.begin(), p.counterexamples.end());
  }
  std::sort(total.counterexamples.begin(), total.counterexamples.end());
  return total;
}

std::vector<ClassNumberRow> class_number_run(std::int64_t d_max, std::uint64_t terms, bool parallel) {
  std::vector<std::int64_t> discs;
  for (std::int64_t d = 5; d <= d_max; ++d)
    if (quadratic::is_fundamental(d)) discs.push_back(d);
  std::vector<ClassNumberRow> rows(discs.size());
  for_range(discs.size(), parallel, [&](std::size_t i) {
    rows[i] = {discs[i], quadratic::class_group(discs[i]).h_wide, quadratic::analytic_h_oracle(discs[i], terms).h};
  });
  return rows;
}

std::vector<u64> sample_moduli(std::uint64_t samples, std::uint64_t n_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(3, n_max);
  std::vector<u64> out(samples);
  for (auto& n : out) n = dist(rng);
  return out;
}

LeopoldtSweep leopoldt_run(std::uint64_t samples, std::uint64_t n_max, std::uint64_t seed, bool parallel) {
  const auto moduli = sample_moduli(samples, n_max, seed);
  std::vector<u64> prime_count(moduli.size());
  std::vector<char> bad(moduli.size(), 0);
  for_range(moduli.size(), parallel, [&](std::size_t i) {
    const u64 n = characters::normalize_modulus(moduli[i]);
    const auto dual = CharacterGroup::full_dual(n);
    for (auto [p, a] : arith::factor_small(n)) {
      ++prime_count[i];
      u64 q = 1;
      for (unsigned k = 0; k < a; ++k) q *= p;
      if (characters::ramification_index(dual, p) != arith::euler_phi(q)) bad[i] = 1;
    }
  });
  LeopoldtSweep out;
  out.moduli = moduli.size();
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    out.primes += prime_count[i];
    if (bad[i]) out.failures.push_back(moduli[i]);
  }
  return out;
}

std::vector<std::vector<u64>> sample_conductors(std::uint64_t count, std::uint64_t prime_bound, std::uint64_t seed) {
  std::vector<u64> odd;
  for (u64 p = 3; p < prime_bound; p += 2)
    if (arith::is_prime(p)) odd.push_back(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(4, 7);
  std::vector<std::vector<u64>> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<u64> pool = odd;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<u64> primes(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size_dist(rng)));
    std::sort(primes.begin(), primes.end());
    out.push_back(std::move(primes));
  }
  return out;
}

LocalRankSweep local_rank_run(std::uint64_t count, std::uint64_t prime_bound, std::uint64_t seed, bool parallel) {
  const auto conductors = sample_conductors(count, prime_bound, seed);
  std::vector<u64> max_rank(conductors.size(), 0);
  for_range(conductors.size(), parallel, [&](std::size_t i) {
    arith::Factorization f;
    for (auto p : conductors[i]) {
      f.factors.push_back({big(p), 1});
      f.n *= big(p);
    }
    for (auto ambient : {characters::Ambient::Full, characters::Ambient::Plus})
      for (auto p : conductors[i]) {
        const auto g_w = characters::decomposition_group(f, big(p), ambient);
        max_rank[i] = std::max<u64>(max_rank[i], cohomology::local_schur_rank(g_w));
      }
  });
  LocalRankSweep out;
  out.conductors = conductors.size();
  for (std::size_t i = 0; i < conductors.size(); ++i) {
    out.primes += conductors[i].size();
    out.max_rank = std::max(out.max_rank, max_rank[i]);
  }
  return out;
}

}  // namespace

ExponentSweep exponent_sweep(std::uint64_t n_max) { return exponent_run(n_max, true); }
ExponentSweep exponent_sweep_serial(std::uint64_t n_max) { return exponent_run(n_max, false); }

std::vector<ClassNumberRow> class_number_sweep(std::int64_t d_max, std::uint64_t terms) {
  return class_number_run(d_max, terms, true);
}
std::vector<ClassNumberRow> class_number_sweep_serial(std::int64_t d_max, std::uint64_t terms) {
  return class_number_run(d_max, terms, false);
}

LeopoldtSweep leopoldt_sweep(std::uint64_t samples, std::uint64_t n_max, std::uint64_t seed) {
  return leopoldt_run(samples, n_max, seed, true);
}
LeopoldtSweep leopoldt_sweep_serial(std::uint64_t samples, std::uint64_t n_max, std::uint64_t seed) {
  return leopoldt_run(samples, n_max, seed, false);
}

LocalRankSweep local_rank_sweep(std::uint64_t count, std::uint64_t prime_bound, std::uint64_t seed) {
  return local_rank_run(count, prime_bound, seed, true);
}
LocalRankSweep local_rank_sweep_serial(std::uint64_t count, std::uint64_t prime_bound, std::uint64_t seed) {
  return local_rank_run(count, prime_bound, seed, false);
}

}  // namespace cyclocert::sweeps
