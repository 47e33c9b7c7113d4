#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclocert::sweeps {

/// Parallel kernels come first; each *_serial twin computes the same result on one thread.

struct ExponentSweep {
  std::uint64_t moduli = 0;
  std::uint64_t subgroups = 0;
  std::uint64_t checks = 0;
  /// "n=.. m=.. X=.." descriptions of failed checks, sorted.
  std::vector<std::string> counterexamples;

  bool operator==(const ExponentSweep&) const = default;
};

/// Every subgroup X of the dual mod n, n <= n_max with n != 2 mod 4, against every m dividing n
/// with dual(m) inside X, checked with d = #X / phi(m).
ExponentSweep exponent_sweep(std::uint64_t n_max);
ExponentSweep exponent_sweep_serial(std::uint64_t n_max);

struct ClassNumberRow {
  std::int64_t D = 0;
  std::uint64_t h_cycles = 0;
  std::uint64_t h_analytic = 0;
  bool operator==(const ClassNumberRow&) const = default;
};

/// Wide class number of every fundamental D <= d_max from the form cycles and from the analytic oracle.
std::vector<ClassNumberRow> class_number_sweep(std::int64_t d_max, std::uint64_t terms = 2'000'000);
std::vector<ClassNumberRow> class_number_sweep_serial(std::int64_t d_max, std::uint64_t terms = 2'000'000);

struct LeopoldtSweep {
  std::uint64_t moduli = 0;
  std::uint64_t primes = 0;
  std::vector<std::uint64_t> failures;  // moduli where e_p != phi(p^a) for some p
  bool operator==(const LeopoldtSweep&) const = default;
};

/// `samples` moduli drawn uniformly from [3, n_max] with a seeded generator.
LeopoldtSweep leopoldt_sweep(std::uint64_t samples, std::uint64_t n_max, std::uint64_t seed);
LeopoldtSweep leopoldt_sweep_serial(std::uint64_t samples, std::uint64_t n_max, std::uint64_t seed);

struct LocalRankSweep {
  std::uint64_t conductors = 0;
  std::uint64_t primes = 0;
  std::uint64_t max_rank = 0;
  bool operator==(const LocalRankSweep&) const = default;
};

/// `count` conductors, each a product of 4 to 7 distinct odd primes below prime_bound, both ambients.
LocalRankSweep local_rank_sweep(std::uint64_t count, std::uint64_t prime_bound, std::uint64_t seed);
LocalRankSweep local_rank_sweep_serial(std::uint64_t count, std::uint64_t prime_bound, std::uint64_t seed);

}  // namespace cyclocert::sweeps
