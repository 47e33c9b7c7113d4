#include "cyclocert/constructor.hpp"

#include <algorithm>
#include <stdexcept>

#include "cyclocert/cohomology.hpp"
#include "cyclocert/errors.hpp"

namespace cyclocert::constructor {

namespace {

Verification fail(std::string reason, std::string detail) { return {false, std::move(reason), std::move(detail)}; }

arith::Factorization squarefree_factorization(const std::vector<u64>& primes) {
  arith::Factorization f;
  std::vector<u64> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  for (auto p : sorted) {
    f.factors.push_back({big(p), 1});
    f.n *= big(p);
  }
  return f;
}

/// (Z/fZ)* for squarefree odd f, or its quotient by -1.
FinAbGroup galois_group(const std::vector<u64>& primes, Ambient ambient) {
  std::vector<BigInt> orders, minus_one;
  for (auto p : primes) {
    orders.push_back(big(p - 1));
    minus_one.push_back(big((p - 1) / 2));
  }
  const abelian::Presentation pres{orders.size(), IntMatrix::diagonal(orders)};
  if (ambient == Ambient::Plus) return abelian::quotient_by_element(pres, minus_one);
  return abelian::from_presentation(pres);
}

u64 congruence_for(u64 m, Ambient ambient) { return ambient == Ambient::Plus ? 2 * m : m; }

std::size_t choose2(std::size_t t) { return t * (t - 1) / 2; }

void check_tower(u64 m, u64 n, const characters::CharacterGroup& x) {
  const u64 mm = characters::normalize_modulus(m), nn = characters::normalize_modulus(n);
  if (nn % mm != 0) throw PreconditionFailed("m = " + std::to_string(m) + " does not divide n = " + std::to_string(n));
  if (x.modulus() != nn)
    throw PreconditionFailed("character group has modulus " + std::to_string(x.modulus()) + ", expected " +
                             std::to_string(nn));
  std::vector<characters::DirichletCharacter> lifted;
  const auto dual_m = characters::CharacterGroup::full_dual(mm);
  for (const auto& chi : dual_m.basis()) lifted.push_back(characters::lift(chi, nn));
  if (!x.contains(characters::group_generated(lifted, nn)))
    throw PreconditionFailed("the dual of (Z/" + std::to_string(mm) + ")* is not inside the character group");
}

}  // namespace

std::size_t t_formula(std::size_t t) {
  if (t < 4) throw std::invalid_argument("t must be at least 4");
  return (t * t - 3 * t - 2) / 2;
}

std::size_t choose_t(std::size_t needed) {
  std::size_t t = 4;
  while (t_formula(t) < needed) ++t;
  return t;
}

std::vector<u64> local_ranks(const std::vector<u64>& primes, Ambient ambient) {
  const auto f = squarefree_factorization(primes);
  std::vector<u64> r;
  for (auto p : primes)
    r.push_back(cohomology::local_schur_rank(characters::decomposition_group(f, big(p), ambient)));
  return r;
}

ConductorCertificate construct(const FinAbGroup& g, const ConstructOptions& options) {
  ConductorCertificate c;
  c.target = g;
  c.ambient = options.ambient;
  if (g.is_trivial()) return c;
  if (!fits_u64(g.exponent())) throw std::invalid_argument("group exponent exceeds 64 bits");
  c.M = to_u64(g.exponent());
  c.t = choose_t(abelian::min_generators(g));
  c.congruence = congruence_for(c.M, c.ambient);
  c.primes = arith::find_primes_in_progression(1, c.congruence, c.t, options.avoid, options.strategy);
  for (auto p : c.primes) c.f *= big(p);
  c.ledger.schur_subgroup = abelian::exterior_square(FinAbGroup::homocyclic(big(c.M), c.t));
  c.ledger.n_bound = 1;
  c.ledger.r = local_ranks(c.primes, c.ambient);
  c.ledger.subtracted = c.ledger.n_bound + c.t;
  c.T = abelian::quotient_surplus(c.ledger.schur_subgroup, c.ledger.subtracted, big(c.M));
  c.guaranteed = FinAbGroup::homocyclic(big(c.M), c.T);
  c.embeds = abelian::embeds_in(g, c.guaranteed);
  if (!c.embeds) throw Error("constructed certificate does not contain the target " + abelian::to_string(g));
  return c;
}

Verification verify_certificate(const ConductorCertificate& c) {
  if (c.target.is_trivial()) {
    if (c.M != 1 || c.t != 0 || !c.primes.empty() || c.f != 1 || c.T != 0 || !c.guaranteed.is_trivial() || !c.embeds)
      return fail("degenerate", "trivial target must carry f = 1, t = 0, T = 0");
    return {};
  }
  if (c.primes.size() != c.t)
    return fail("shape", "t = " + std::to_string(c.t) + " but " + std::to_string(c.primes.size()) + " primes listed");
  if (c.t < 4) return fail("t_floor", "t = " + std::to_string(c.t) + " is below 4");
  if (big(c.M) != c.target.exponent())
    return fail("exponent", "M = " + std::to_string(c.M) + " is not the exponent of the target");
  for (auto p : c.primes)
    if (!arith::is_prime(p)) return fail("primality", std::to_string(p) + " is not prime");
  std::vector<u64> sorted = c.primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return fail("distinct", "repeated prime");
  const u64 congruence = congruence_for(c.M, c.ambient);
  if (c.congruence != congruence)
    return fail("congruence", "congruence modulus " + std::to_string(c.congruence) + ", expected " +
                                  std::to_string(congruence));
  for (auto p : c.primes)
    if (p % congruence != 1)
      return fail("congruence", std::to_string(p) + " is not 1 mod " + std::to_string(congruence));
  BigInt f = 1;
  for (auto p : c.primes) f *= big(p);
  if (f != c.f) return fail("conductor", "f is not the product of the primes");

  const FinAbGroup base = FinAbGroup::homocyclic(big(c.M), c.t);
  const FinAbGroup galois = galois_group(c.primes, c.ambient);
  if (!abelian::embeds_in(base, galois))
    return fail("galois", abelian::to_string(galois) + " does not contain (Z/" + std::to_string(c.M) + ")^" +
                              std::to_string(c.t));

  const auto r = local_ranks(c.primes, c.ambient);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] > 1) return fail("local", "local Schur rank " + std::to_string(r[i]) + " at " + std::to_string(c.primes[i]));
  u64 rank_sum = 0;
  for (auto v : r) rank_sum += v;

  const FinAbGroup schur = abelian::exterior_square(base);
  if (c.ledger.schur_subgroup != schur) return fail("ledger", "Schur subgroup does not match (Z/M)^C(t,2)");
  if (c.ledger.n_bound != 1) return fail("ledger", "n_bound must be 1 over Q");
  if (c.ledger.r != r) return fail("ledger", "recorded local ranks differ from the recomputed ones");
  if (c.ledger.subtracted != c.ledger.n_bound + c.t || c.ledger.n_bound + rank_sum > c.ledger.subtracted)
    return fail("ledger", "subtracted generator count must be n_bound + t and cover the local ranks");
  const std::size_t T = abelian::quotient_surplus(schur, c.ledger.subtracted, big(c.M));
  if (c.T != T) return fail("ledger", "T = " + std::to_string(c.T) + ", recomputed " + std::to_string(T));
  if (T > choose2(c.t) - (c.t + 1)) return fail("ledger", "T exceeds C(t,2) - (t+1)");
  if (c.guaranteed != FinAbGroup::homocyclic(big(c.M), T))
    return fail("ledger", "guaranteed subgroup is not (Z/M)^T");
  const bool embeds = abelian::embeds_in(c.target, c.guaranteed);
  if (!embeds || !c.embeds) return fail("embedding", abelian::to_string(c.target) + " does not embed in (Z/M)^T");
  return {};
}

FinAbGroup compositum_subgroup(const FinAbGroup& cl_k, const FinAbGroup& cl_l, u64 m, u64 n) {
  if (m == 0 || n == 0) throw std::invalid_argument("field degrees must be positive");
  FinAbGroup out;
  for (u64 i = 0; i < n; ++i) out = abelian::direct_sum(out, cl_k);
  for (u64 i = 0; i < m; ++i) out = abelian::direct_sum(out, cl_l);
  return out;
}

NormCertificate norm_image_certificate(u64 m, u64 n, const characters::CharacterGroup& x) {
  check_tower(m, n, x);
  const u64 mm = characters::normalize_modulus(m);
  const u64 phi = arith::euler_phi(mm);
  NormCertificate c;
  c.m = m;
  c.n = n;
  c.x = x;
  c.d = x.order() / phi;
  c.checked = characters::exponent_check(x, mm, c.d).ok;
  return c;
}

bool q_part_norm_surjective(u64 m, u64 n, const characters::CharacterGroup& x, u64 q) {
  if (!arith::is_prime(q)) throw std::invalid_argument(std::to_string(q) + " is not prime");
  check_tower(m, n, x);
  const u64 d = x.order() / arith::euler_phi(characters::normalize_modulus(m));
  return d % q != 0;
}

}  // namespace cyclocert::constructor
