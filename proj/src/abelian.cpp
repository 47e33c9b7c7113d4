#include "cyclocert/abelian.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cyclocert/errors.hpp"
#include "cyclocert/snf.hpp"

namespace cyclocert::abelian {

FinAbGroup FinAbGroup::from_cyclic_orders(const std::vector<BigInt>& orders) {
  std::vector<BigInt> d;
  for (const auto& x : orders) {
    if (sgn(x) <= 0) throw std::invalid_argument("cyclic orders must be positive");
    if (x != 1) d.push_back(x);
  }
  // pairwise (gcd, lcm) replacement turns any list into a divisor chain
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      BigInt g = gcd(d[i], d[j]);
      BigInt l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  }
  FinAbGroup out;
  for (auto& x : d)
    if (x != 1) out.factors_.push_back(std::move(x));
  return out;
}

FinAbGroup FinAbGroup::from_cyclic_orders(std::initializer_list<long> orders) {
  std::vector<BigInt> v;
  for (long x : orders) v.emplace_back(x);
  return from_cyclic_orders(v);
}

FinAbGroup FinAbGroup::from_invariant_factors(std::vector<BigInt> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
    if (i > 0 && factors[i] % factors[i - 1] != 0) throw std::invalid_argument("invariant factors must form a divisor chain");
  }
  FinAbGroup g;
  g.factors_ = std::move(factors);
  return g;
}

FinAbGroup FinAbGroup::homocyclic(const BigInt& m, std::size_t copies) {
  if (m < 2 || copies == 0) return {};
  return from_invariant_factors(std::vector<BigInt>(copies, m));
}

BigInt FinAbGroup::order() const {
  BigInt n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

BigInt FinAbGroup::exponent() const { return factors_.empty() ? BigInt(1) : factors_.back(); }

std::ostream& operator<<(std::ostream& os, const FinAbGroup& g) {
  os << '[';
  const auto& f = g.invariant_factors();
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << f[i];
  return os << ']';
}

std::string to_string(const FinAbGroup& g) {
  std::ostringstream ss;
  ss << g;
  return ss.str();
}

Presentation Presentation::of(const FinAbGroup& g) {
  return {g.invariant_factors().size(), IntMatrix::diagonal(g.invariant_factors())};
}

FinAbGroup from_presentation(std::size_t generators, const IntMatrix& relations) {
  if (generators == 0) return {};
  if (relations.rows() != generators) throw std::invalid_argument("relation matrix must have one row per generator");
  const auto divisors = elementary_divisors(relations);
  if (divisors.size() < generators) throw InfiniteGroup("presentation has free rank " + std::to_string(generators - divisors.size()));
  return FinAbGroup::from_cyclic_orders(divisors);
}

FinAbGroup from_presentation(const Presentation& p) { return from_presentation(p.generators, p.relations); }

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<BigInt> all = a.invariant_factors();
  all.insert(all.end(), b.invariant_factors().begin(), b.invariant_factors().end());
  return FinAbGroup::from_cyclic_orders(all);
}

FinAbGroup exterior_square(const FinAbGroup& g) {
  const auto& d = g.invariant_factors();
  std::vector<BigInt> pieces;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) pieces.push_back(gcd(d[i], d[j]));
  return FinAbGroup::from_cyclic_orders(pieces);
}

bool embeds_in(const FinAbGroup& a, const FinAbGroup& b) {
  // Aligned from the top: the i-th largest factor of A must divide the i-th largest of B.
  const auto& x = a.invariant_factors();
  const auto& y = b.invariant_factors();
  if (x.size() > y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[y.size() - 1 - i] % x[x.size() - 1 - i] != 0) return false;
  }
  return true;
}

std::size_t quotient_surplus(const FinAbGroup& b, std::size_t s, const BigInt& m) {
  std::size_t r = 0;
  for (const auto& d : b.invariant_factors())
    if (d % m == 0) ++r;
  return r > s ? r - s : 0;
}

std::size_t min_generators(const FinAbGroup& g) { return g.invariant_factors().size(); }

FinAbGroup quotient_by_element(const Presentation& g, const std::vector<BigInt>& element) {
  if (element.size() != g.generators) throw std::invalid_argument("element length must match generator count");
  IntMatrix column = IntMatrix::from_columns(g.generators, {element});
  const IntMatrix rel = g.relations.cols() == 0 ? column : g.relations.hconcat(column);
  return from_presentation(g.generators, rel);
}

FinAbGroup lattice_quotient(const IntMatrix& super_gens, const IntMatrix& sub_gens) {
  if (super_gens.rows() != sub_gens.rows()) throw std::invalid_argument("lattice generators live in different ambient ranks");
  const auto snf = smith_normal_form(super_gens);
  const std::size_t k = snf.rank;
  IntMatrix coords(k, sub_gens.cols());
  for (std::size_t c = 0; c < sub_gens.cols(); ++c) {
    const auto z = snf.U * sub_gens.column(c);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i < k) {
        if (z[i] % snf.D(i, i) != 0) throw PreconditionFailed("sublattice is not contained in the lattice");
        coords(i, c) = z[i] / snf.D(i, i);
      } else if (sgn(z[i]) != 0) {
        throw PreconditionFailed("sublattice is not contained in the lattice");
      }
    }
  }
  try {
    return from_presentation(k, coords);
  } catch (const InfiniteGroup& e) {
    throw InfiniteResult(e.what());
  }
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const auto snf = smith_normal_form(a);
  const std::size_t n = a.cols();
  return snf.V.submatrix(0, snf.rank, n, n - snf.rank);
}

}  // namespace cyclocert::abelian
