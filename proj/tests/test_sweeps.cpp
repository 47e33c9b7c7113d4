#include "cyclocert/sweeps.hpp"
#include "doctest.h"

using namespace cyclocert::sweeps;

TEST_CASE("exponent sweep: parallel equals serial, no counterexamples") {
  const auto par = exponent_sweep(60);
  CHECK(par == exponent_sweep_serial(60));
  CHECK(par.counterexamples.empty());
  // n <= 60 with n != 2 mod 4
  CHECK(par.moduli == 45);
  CHECK(par.checks >= par.subgroups);
}

TEST_CASE("class number sweep: engines agree and parallel equals serial") {
  const auto par = class_number_sweep(400, 200'000);
  CHECK(par == class_number_sweep_serial(400, 200'000));
  for (const auto& row : par) CHECK(row.h_cycles == row.h_analytic);
  CHECK(par.front().D == 5);
}

TEST_CASE("Leopoldt sweep") {
  const auto par = leopoldt_sweep(100, 5000, 3);
  CHECK(par == leopoldt_sweep_serial(100, 5000, 3));
  CHECK(par.failures.empty());
  CHECK(par.moduli == 100);
}

TEST_CASE("local rank sweep") {
  const auto par = local_rank_sweep(30, 500, 5);
  CHECK(par == local_rank_sweep_serial(30, 500, 5));
  CHECK(par.max_rank <= 1);
  CHECK(par.primes >= 4 * 30);
}
