#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclocert/abelian.hpp"
#include "cyclocert/arith.hpp"
#include "cyclocert/matrix.hpp"

namespace cyclocert::characters {

using arith::u64;

/// Full cyclotomic field Q(zeta_f) or its maximal real subfield.
enum class Ambient { Full, Plus };

struct CyclicPiece {
  u64 generator_local;  // generator mod p^a
  u64 generator;        // CRT lift: generator_local mod p^a, 1 mod the rest of n
  u64 order;
};

struct PrimeComponent {
  u64 p;
  unsigned exponent;
  u64 prime_power;
  std::vector<CyclicPiece> pieces;
};

/// (Z/nZ)* as a product of cyclic pieces; piece order follows ascending p.
struct UnitGroupStructure {
  u64 modulus = 1;
  std::vector<PrimeComponent> components;

  std::vector<u64> piece_orders() const;
  std::size_t piece_count() const;
  /// Index of the first piece belonging to prime p, and how many pieces it has.
  std::pair<std::size_t, std::size_t> piece_range(u64 p) const;
  u64 order() const;
};

/// n = 2 (mod 4) maps to n/2; everything else is unchanged. Throws InvalidModulus on 0.
u64 normalize_modulus(u64 n);

/// Bound on n for character arithmetic.
inline constexpr u64 kMaxCharacterModulus = 1'000'000;

/// Normalizes n first. Throws InvalidModulus on n = 0 or n above the character bound.
UnitGroupStructure unit_group_structure(u64 n);

/// Discrete-log coordinates of a unit a mod n against the structure's generators.
std::vector<u64> unit_coordinates(const UnitGroupStructure& s, u64 a);

/// Smallest k with g^k = h mod q, where g has multiplicative order `order`. Pohlig-Hellman + BSGS.
/// Returns nullopt if h is not a power of g.
std::optional<u64> discrete_log(u64 g, u64 h, u64 order, u64 q);

/// chi(g_i) = zeta_{c_i}^{e_i} on the canonical generators of (Z/nZ)*.
class DirichletCharacter {
 public:
  DirichletCharacter() : DirichletCharacter(1) {}
  /// Trivial character mod n.
  explicit DirichletCharacter(u64 n);
  /// Exponents are reduced mod the piece orders; throws std::invalid_argument on a length mismatch.
  static DirichletCharacter from_exponents(u64 n, std::vector<u64> exponents);
  /// "n:c1,c2,.../e1,e2,..."; throws ParseError.
  static DirichletCharacter parse(const std::string& text);

  u64 modulus() const { return modulus_; }
  const std::vector<u64>& piece_orders() const { return orders_; }
  const std::vector<u64>& exponents() const { return exponents_; }
  const UnitGroupStructure& structure() const;

  u64 order() const;
  bool is_trivial() const;
  /// chi(-1) = 1
  bool is_even() const;

  DirichletCharacter operator*(const DirichletCharacter& other) const;
  DirichletCharacter pow(u64 k) const;
  DirichletCharacter inverse() const;

  std::string to_string() const;

  bool operator==(const DirichletCharacter& o) const {
    return modulus_ == o.modulus_ && exponents_ == o.exponents_;
  }
  bool operator<(const DirichletCharacter& o) const {
    return modulus_ != o.modulus_ ? modulus_ < o.modulus_ : exponents_ < o.exponents_;
  }

 private:
  u64 modulus_ = 1;
  std::vector<u64> orders_;
  std::vector<u64> exponents_;
};

/// chi(a) = zeta_order^exponent, or zero when gcd(a, n) > 1.
struct CharValue {
  bool zero = false;
  u64 exponent = 0;
  u64 order = 1;

  bool operator==(const CharValue&) const = default;
};

CharValue evaluate(const DirichletCharacter& chi, std::int64_t a);

/// The factor of chi with p-power conductor, as a character mod p^{a_p}. Trivial mod 1 when p does not divide n.
DirichletCharacter p_component(const DirichletCharacter& chi, u64 p);

u64 conductor(const DirichletCharacter& chi);

/// The character mod n induced by chi mod m; requires normalize(m) | normalize(n), else ModulusMismatch.
DirichletCharacter lift(const DirichletCharacter& chi, u64 n);

/// Character of Q(sqrt(m)), m squarefree, as a character mod |D|.
DirichletCharacter quadratic_character(std::int64_t m);

/// Subgroup of the dual of (Z/nZ)*, stored as a canonical row HNF of its exponent lattice.
class CharacterGroup {
 public:
  CharacterGroup() : CharacterGroup(1) {}
  /// Trivial subgroup mod n.
  explicit CharacterGroup(u64 n);

  static CharacterGroup full_dual(u64 n);

  u64 modulus() const { return modulus_; }
  u64 order() const { return order_; }
  /// Independent generators; basis()[j] has order structure_orders()[j].
  const std::vector<DirichletCharacter>& basis() const { return basis_; }
  const std::vector<u64>& structure_orders() const { return basis_orders_; }
  abelian::FinAbGroup structure() const;
  /// Canonical form: equal subgroups have equal matrices.
  const IntMatrix& canonical_form() const { return hnf_; }

  bool contains(const DirichletCharacter& chi) const;
  bool contains(const CharacterGroup& other) const;
  /// Every element, in mixed-radix order over the basis.
  std::vector<DirichletCharacter> elements() const;

  bool operator==(const CharacterGroup& o) const { return modulus_ == o.modulus_ && hnf_ == o.hnf_; }

  friend CharacterGroup group_generated(const std::vector<DirichletCharacter>& chars, u64 n);

 private:
  u64 modulus_ = 1;
  std::vector<u64> orders_;  // piece orders of (Z/nZ)*
  IntMatrix hnf_;
  u64 order_ = 1;
  std::vector<DirichletCharacter> basis_;
  std::vector<u64> basis_orders_;
};

/// Throws ModulusMismatch unless every character has modulus normalize(n).
CharacterGroup group_generated(const std::vector<DirichletCharacter>& chars, u64 n);

/// X_p, a group mod p^{a_p}.
CharacterGroup component_group(const CharacterGroup& x, u64 p);
u64 ramification_index(const CharacterGroup& x, u64 p);
/// Group generated by all X_p, lifted back to the modulus of X.
CharacterGroup genus_group(const CharacterGroup& x);
/// {chi in X : chi(-1) = 1}
CharacterGroup plus_subgroup(const CharacterGroup& x);

struct FieldInvariants {
  u64 degree;
  u64 conductor;
  bool operator==(const FieldInvariants&) const = default;
};
FieldInvariants field_invariants(const CharacterGroup& x);

struct ExponentCheck {
  bool ok = true;
  std::optional<DirichletCharacter> witness;
};

/// True iff conductor(chi^d) | m for chi in the genus group of X. With strict set every element is
/// checked, otherwise only the basis. Throws PreconditionFailed unless dual(m) is inside X.
ExponentCheck exponent_check(const CharacterGroup& x, u64 m, u64 d, bool strict = true);

/// Every subgroup of X. Throws GroupTooLarge when #X exceeds max_order.
std::vector<CharacterGroup> all_subgroups(const CharacterGroup& x, u64 max_order = 4096);

/// Decomposition group at p inside Gal(Q(zeta_f)/Q), or its image in the plus quotient.
/// Computed componentwise, so f may exceed the character bound. Throws UnramifiedPrime if p does not divide f.
abelian::FinAbGroup decomposition_group(const arith::Factorization& f, const BigInt& p, Ambient ambient);

}  // namespace cyclocert::characters
