#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "cyclocert/abelian.hpp"
#include "cyclocert/arith.hpp"
#include "cyclocert/characters.hpp"

namespace cyclocert::constructor {

using abelian::FinAbGroup;
using arith::u64;
using characters::Ambient;

/// Generators charged against the Schur subgroup: n_bound for the base field plus one r_v per ramified prime.
struct Ledger {
  FinAbGroup schur_subgroup;
  u64 n_bound = 1;
  std::vector<u64> r;  // recomputed local Schur ranks, one per prime
  u64 subtracted = 0;  // n_bound + t, the charge used for T

  bool operator==(const Ledger&) const = default;
};

/// Claims that the class group of Q(zeta_f) (or its real subfield) contains (Z/MZ)^T, and that the
/// target embeds in it. Every field is recomputed by verify_certificate.
struct ConductorCertificate {
  FinAbGroup target;
  u64 M = 1;
  Ambient ambient = Ambient::Plus;
  std::size_t t = 0;
  std::vector<u64> primes;
  BigInt f{1};
  u64 congruence = 1;
  std::size_t T = 0;
  Ledger ledger;
  FinAbGroup guaranteed;
  bool embeds = true;

  bool operator==(const ConductorCertificate&) const = default;
};

/// (t^2 - 3t - 2) / 2 for t >= 4; throws std::invalid_argument below.
std::size_t t_formula(std::size_t t);
/// Smallest t >= 4 with t_formula(t) >= needed.
std::size_t choose_t(std::size_t needed);

struct ConstructOptions {
  Ambient ambient = Ambient::Plus;
  std::set<u64> avoid;
  arith::PrimeSearchStrategy strategy;
};

/// Trivial G gives the certificate with f = 1 and T = 0.
ConductorCertificate construct(const FinAbGroup& g, const ConstructOptions& options = {});

/// Local Schur rank at each prime of a squarefree odd conductor.
std::vector<u64> local_ranks(const std::vector<u64>& primes, Ambient ambient);

struct Verification {
  bool ok = true;
  /// Empty on success; otherwise one of shape, t_floor, exponent, primality, distinct, congruence,
  /// conductor, galois, local, ledger, embedding, degenerate.
  std::string reason;
  std::string detail;
};

/// Recomputes the certificate from target, ambient and primes alone.
Verification verify_certificate(const ConductorCertificate& c);

/// Cl_K^n (+) Cl_L^m for a compositum of fields of degrees m and n; throws std::invalid_argument if m or n is 0.
FinAbGroup compositum_subgroup(const FinAbGroup& cl_k, const FinAbGroup& cl_l, u64 m, u64 n);

struct NormCertificate {
  u64 m = 1, n = 1;
  characters::CharacterGroup x;
  u64 d = 1;  // [F : Q(zeta_m)]
  bool checked = false;
};

/// For Q(zeta_m) inside F inside Q(zeta_n), F cut out by x: d = #x / phi(m), and whether the genus
/// group passes the exponent check with that d. Throws PreconditionFailed when the tower fails.
NormCertificate norm_image_certificate(u64 m, u64 n, const characters::CharacterGroup& x);

/// True iff the prime q does not divide [F : Q(zeta_m)], the condition under which the norm is
/// surjective on q-parts of class groups. Same preconditions as norm_image_certificate.
bool q_part_norm_surjective(u64 m, u64 n, const characters::CharacterGroup& x, u64 q);

}  // namespace cyclocert::constructor
