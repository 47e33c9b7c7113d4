#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyclocert/bigint.hpp"
#include "cyclocert/matrix.hpp"

namespace cyclocert::abelian {

/// Finite abelian group in invariant-factor form d1 | d2 | ... | dk, every d_i >= 2.
/// The trivial group is the empty chain.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  /// Accepts any list of cyclic orders (>= 1) and renormalizes to a divisor chain.
  static FinAbGroup from_cyclic_orders(const std::vector<BigInt>& orders);
  static FinAbGroup from_cyclic_orders(std::initializer_list<long> orders);
  /// Throws std::invalid_argument unless `factors` is already a divisor chain of entries >= 2.
  static FinAbGroup from_invariant_factors(std::vector<BigInt> factors);

  /// (Z/mZ)^copies
  static FinAbGroup homocyclic(const BigInt& m, std::size_t copies);

  const std::vector<BigInt>& invariant_factors() const { return factors_; }
  BigInt order() const;
  /// Largest invariant factor, 1 for the trivial group.
  BigInt exponent() const;
  bool is_trivial() const { return factors_.empty(); }
  bool is_cyclic() const { return factors_.size() <= 1; }

  bool operator==(const FinAbGroup&) const = default;

 private:
  std::vector<BigInt> factors_;
};

std::ostream& operator<<(std::ostream& os, const FinAbGroup& g);
/// "[2, 4]" style rendering; "[]" for the trivial group.
std::string to_string(const FinAbGroup& g);

/// A finitely presented abelian group Z^g / column-span(relations).
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;  // generators x k

  /// Canonical presentation of G on its invariant-factor generators.
  static Presentation of(const FinAbGroup& g);
};

/// Throws InfiniteGroup if the quotient has positive rank.
FinAbGroup from_presentation(std::size_t generators, const IntMatrix& relations);
FinAbGroup from_presentation(const Presentation& p);

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);
/// Lambda^2 G = sum_{i<j} Z/gcd(d_i, d_j).
FinAbGroup exterior_square(const FinAbGroup& g);
/// True iff A is isomorphic to a subgroup of B.
bool embeds_in(const FinAbGroup& a, const FinAbGroup& b);
/// max(R - s, 0) with R = #{i : M | d_i}.
std::size_t quotient_surplus(const FinAbGroup& b, std::size_t s, const BigInt& m);
std::size_t min_generators(const FinAbGroup& g);
/// G / <element>, element given as coordinates on the presentation's generators.
FinAbGroup quotient_by_element(const Presentation& g, const std::vector<BigInt>& element);

/// Quotient of lattices span(sub) inside span(super), both given as generator columns in Z^r.
/// Throws InfiniteResult if span(sub) has lower rank than span(super),
/// PreconditionFailed if span(sub) is not contained in span(super).
FinAbGroup lattice_quotient(const IntMatrix& super_gens, const IntMatrix& sub_gens);

/// Column generators of the lattice {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

}  // namespace cyclocert::abelian
