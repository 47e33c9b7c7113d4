#include "cyclocert/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "cyclocert/errors.hpp"
#include "cyclocert/snf.hpp"

namespace cyclocert::characters {

using arith::gcd;
using arith::lcm;
using arith::mul_mod;
using arith::pow_mod;

namespace {

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

u64 phi_prime_power(u64 p, unsigned a) { return a == 0 ? 1 : ipow(p, a - 1) * (p - 1); }

std::optional<u64> bsgs(u64 g, u64 h, u64 order, u64 q) {
  if (order <= 64) {
    u64 x = 1;
    for (u64 k = 0; k < order; ++k, x = mul_mod(x, g, q))
      if (x == h) return k;
    return std::nullopt;
  }
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 x = 1;
  for (u64 j = 0; j < m; ++j, x = mul_mod(x, g, q)) baby.emplace(x, j);
  const u64 giant = arith::inverse_mod(pow_mod(g, m, q), q);
  u64 y = h;
  for (u64 i = 0; i <= m; ++i, y = mul_mod(y, giant, q)) {
    auto it = baby.find(y);
    if (it != baby.end()) return (i * m + it->second) % order;
  }
  return std::nullopt;
}

// Generalized CRT: merges x = r (mod m) into x = r0 (mod m0); false if incompatible.
bool crt_merge(BigInt& r0, BigInt& m0, const BigInt& r, const BigInt& m) {
  BigInt g = ::gcd(m0, m);
  BigInt diff = r - r0;
  if (diff % g != 0) return false;
  BigInt m0g = m0 / g, mg = m / g;
  BigInt inv;
  if (mg == 1) {
    inv = 0;
  } else {
    mpz_invert(inv.get_mpz_t(), BigInt(m0g % mg).get_mpz_t(), mg.get_mpz_t());
  }
  BigInt k = (diff / g) * inv % mg;
  if (k < 0) k += mg;
  r0 += m0 * k;
  m0 *= mg;
  r0 %= m0;
  if (r0 < 0) r0 += m0;
  return true;
}

std::vector<u64> split_csv_u64(const std::string& s) {
  std::vector<u64> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad integer '" + item + "'");
    out.push_back(std::stoull(item));
  }
  return out;
}

// Upper-triangular HNF solve x H = v; nullopt unless x is integral.
std::optional<std::vector<BigInt>> solve_upper(const IntMatrix& h, const std::vector<BigInt>& v) {
  const std::size_t k = h.rows();
  std::vector<BigInt> x(k);
  std::vector<BigInt> rest = v;
  for (std::size_t i = 0; i < k; ++i) {
    if (rest[i] % h(i, i) != 0) return std::nullopt;
    x[i] = rest[i] / h(i, i);
    for (std::size_t j = i; j < k; ++j) rest[j] -= x[i] * h(i, j);
  }
  return x;
}

}  // namespace

u64 normalize_modulus(u64 n) {
  if (n == 0) throw InvalidModulus("modulus must be positive");
  return n % 4 == 2 ? n / 2 : n;
}

std::vector<u64> UnitGroupStructure::piece_orders() const {
  std::vector<u64> out;
  for (const auto& c : components)
    for (const auto& piece : c.pieces) out.push_back(piece.order);
  return out;
}

std::size_t UnitGroupStructure::piece_count() const {
  std::size_t k = 0;
  for (const auto& c : components) k += c.pieces.size();
  return k;
}

std::pair<std::size_t, std::size_t> UnitGroupStructure::piece_range(u64 p) const {
  std::size_t start = 0;
  for (const auto& c : components) {
    if (c.p == p) return {start, c.pieces.size()};
    start += c.pieces.size();
  }
  return {start, 0};
}

u64 UnitGroupStructure::order() const {
  u64 n = 1;
  for (u64 c : piece_orders()) n *= c;
  return n;
}

UnitGroupStructure unit_group_structure(u64 n) {
  n = normalize_modulus(n);
  if (n > kMaxCharacterModulus) throw InvalidModulus("modulus " + std::to_string(n) + " exceeds the character bound");
  UnitGroupStructure s;
  s.modulus = n;
  for (auto [p, a] : arith::factor_small(n)) {
    PrimeComponent comp{p, a, ipow(p, a), {}};
    const u64 q = comp.prime_power;
    const u64 rest = n / q;
    // CRT lift of x mod q that is 1 mod rest
    auto lift_local = [&](u64 x) -> u64 {
      if (rest == 1) return x % n;
      const u64 k = mul_mod((x + q - 1) % q, arith::inverse_mod(rest % q, q), q);
      return (1 + mul_mod(k, rest, n)) % n;
    };
    if (p == 2) {
      if (a >= 2) comp.pieces.push_back({q - 1, lift_local(q - 1), 2});
      if (a >= 3) comp.pieces.push_back({5, lift_local(5), q / 4});
    } else {
      const u64 g = arith::primitive_root(q);
      comp.pieces.push_back({g, lift_local(g), phi_prime_power(p, a)});
    }
    s.components.push_back(std::move(comp));
  }
  return s;
}

namespace {

const UnitGroupStructure& cached_structure(u64 n) {
  static std::shared_mutex mu;
  static std::map<u64, std::unique_ptr<UnitGroupStructure>> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  auto s = std::make_unique<UnitGroupStructure>(unit_group_structure(n));
  std::unique_lock lock(mu);
  auto [it, inserted] = cache.emplace(n, std::move(s));
  return *it->second;
}

}  // namespace

std::optional<u64> discrete_log(u64 g, u64 h, u64 order, u64 q) {
  g %= q;
  h %= q;
  if (order == 1) return h == 1 % q ? std::optional<u64>(0) : std::nullopt;
  BigInt x_all = 0, mod_all = 1;
  for (auto [l, e] : arith::factor_small(order)) {
    const u64 le = ipow(l, e);
    const u64 cof = order / le;
    const u64 g0 = pow_mod(g, cof, q);
    const u64 h0 = pow_mod(h, cof, q);
    const u64 gamma = pow_mod(g0, le / l, q);
    const u64 g0_inv = arith::inverse_mod(g0, q);
    u64 x = 0, lk = 1;
    for (unsigned k = 0; k < e; ++k) {
      const u64 shifted = mul_mod(pow_mod(g0_inv, x, q), h0, q);
      const u64 hk = pow_mod(shifted, le / (lk * l), q);
      auto d = bsgs(gamma, hk, l, q);
      if (!d) return std::nullopt;
      x += *d * lk;
      lk *= l;
    }
    if (!crt_merge(x_all, mod_all, big(x), big(le))) return std::nullopt;
  }
  const u64 x = to_u64(x_all);
  if (pow_mod(g, x, q) != h) return std::nullopt;
  return x;
}

std::vector<u64> unit_coordinates(const UnitGroupStructure& s, u64 a) {
  const u64 n = s.modulus;
  if (gcd(a % n, n) != 1 % n && n != 1) throw std::invalid_argument("argument is not a unit");
  std::vector<u64> out;
  for (const auto& comp : s.components) {
    const u64 q = comp.prime_power;
    const u64 r = a % q;
    if (comp.p == 2) {
      if (comp.exponent < 2) continue;
      const bool neg = r % 4 == 3;
      out.push_back(neg ? 1 : 0);
      if (comp.exponent >= 3) {
        const u64 pos = neg ? q - r : r;
        out.push_back(*discrete_log(5, pos, q / 4, q));
      }
    } else {
      const auto& piece = comp.pieces.front();
      out.push_back(*discrete_log(piece.generator_local, r, piece.order, q));
    }
  }
  return out;
}

DirichletCharacter::DirichletCharacter(u64 n) : modulus_(normalize_modulus(n)) {
  orders_ = structure().piece_orders();
  exponents_.assign(orders_.size(), 0);
}

const UnitGroupStructure& DirichletCharacter::structure() const { return cached_structure(modulus_); }

DirichletCharacter DirichletCharacter::from_exponents(u64 n, std::vector<u64> exponents) {
  DirichletCharacter chi(n);
  if (exponents.size() != chi.orders_.size())
    throw std::invalid_argument("expected " + std::to_string(chi.orders_.size()) + " exponents for modulus " +
                                std::to_string(chi.modulus_));
  for (std::size_t i = 0; i < exponents.size(); ++i) exponents[i] %= chi.orders_[i];
  chi.exponents_ = std::move(exponents);
  return chi;
}

DirichletCharacter DirichletCharacter::parse(const std::string& text) {
  const auto colon = text.find(':');
  const auto slash = text.find('/');
  if (colon == std::string::npos || slash == std::string::npos || slash < colon)
    throw ParseError("character must look like n:c1,c2/e1,e2");
  const auto n = split_csv_u64(text.substr(0, colon));
  if (n.size() != 1) throw ParseError("bad modulus in '" + text + "'");
  const auto orders = split_csv_u64(text.substr(colon + 1, slash - colon - 1));
  const auto exps = split_csv_u64(text.substr(slash + 1));
  DirichletCharacter chi;
  try {
    chi = DirichletCharacter(n[0]);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (orders != chi.orders_) throw ParseError("piece orders do not match modulus " + std::to_string(chi.modulus_));
  if (exps.size() != orders.size()) throw ParseError("exponent count does not match piece count");
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] >= orders[i]) throw ParseError("exponent out of range");
  chi.exponents_ = exps;
  return chi;
}

u64 DirichletCharacter::order() const {
  u64 o = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) o = lcm(o, orders_[i] / gcd(exponents_[i], orders_[i]));
  return o;
}

bool DirichletCharacter::is_trivial() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](u64 e) { return e == 0; });
}

bool DirichletCharacter::is_even() const { return evaluate(*this, -1).exponent == 0; }

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
  if (other.modulus_ != modulus_) throw ModulusMismatch("characters have different moduli");
  DirichletCharacter out = *this;
  for (std::size_t i = 0; i < orders_.size(); ++i) out.exponents_[i] = (exponents_[i] + other.exponents_[i]) % orders_[i];
  return out;
}

DirichletCharacter DirichletCharacter::pow(u64 k) const {
  DirichletCharacter out = *this;
  for (std::size_t i = 0; i < orders_.size(); ++i) out.exponents_[i] = mul_mod(exponents_[i], k % orders_[i], orders_[i]);
  return out;
}

DirichletCharacter DirichletCharacter::inverse() const {
  DirichletCharacter out = *this;
  for (std::size_t i = 0; i < orders_.size(); ++i) out.exponents_[i] = (orders_[i] - exponents_[i]) % orders_[i];
  return out;
}

std::string DirichletCharacter::to_string() const {
  std::ostringstream ss;
  ss << modulus_ << ':';
  for (std::size_t i = 0; i < orders_.size(); ++i) ss << (i ? "," : "") << orders_[i];
  ss << '/';
  for (std::size_t i = 0; i < exponents_.size(); ++i) ss << (i ? "," : "") << exponents_[i];
  return ss.str();
}

CharValue evaluate(const DirichletCharacter& chi, std::int64_t a) {
  const u64 n = chi.modulus();
  const u64 r = static_cast<u64>(arith::mod_floor(a, static_cast<std::int64_t>(n)));
  CharValue v;
  v.order = chi.order();
  if (n > 1 && gcd(r, n) != 1) {
    v.zero = true;
    return v;
  }
  const auto coords = unit_coordinates(chi.structure(), r);
  const auto& c = chi.piece_orders();
  u64 big_l = 1;
  for (u64 ci : c) big_l = lcm(big_l, ci);
  u64 sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const u64 term = mul_mod(mul_mod(chi.exponents()[i], coords[i], big_l), big_l / c[i], big_l);
    sum = (sum + term) % big_l;
  }
  v.exponent = sum / (big_l / v.order);
  return v;
}

DirichletCharacter p_component(const DirichletCharacter& chi, u64 p) {
  const auto& s = chi.structure();
  const auto [start, count] = s.piece_range(p);
  if (count == 0) {
    for (const auto& comp : s.components)
      if (comp.p == p) return DirichletCharacter(comp.prime_power);
    return DirichletCharacter(1);
  }
  u64 q = 1;
  for (const auto& comp : s.components)
    if (comp.p == p) q = comp.prime_power;
  std::vector<u64> e(chi.exponents().begin() + static_cast<std::ptrdiff_t>(start),
                     chi.exponents().begin() + static_cast<std::ptrdiff_t>(start + count));
  return DirichletCharacter::from_exponents(q, std::move(e));
}

u64 conductor(const DirichletCharacter& chi) {
  const auto& s = chi.structure();
  u64 f = 1;
  std::size_t idx = 0;
  for (const auto& comp : s.components) {
    const u64 p = comp.p;
    const unsigned a = comp.exponent;
    if (p == 2) {
      if (a < 2) continue;
      const u64 e0 = chi.exponents()[idx++];
      const u64 e1 = a >= 3 ? chi.exponents()[idx++] : 0;
      if (e1 == 0) {
        if (e0 != 0) f *= 4;
        continue;
      }
      // trivial on the kernel <5^{2^{b-2}}> of reduction mod 2^b
      const u64 c1 = comp.prime_power / 4;
      unsigned b = 3;
      while ((e1 << (b - 2)) % c1 != 0) ++b;
      f *= ipow(2, b);
    } else {
      const u64 e = chi.exponents()[idx++];
      if (e == 0) continue;
      const u64 c = comp.pieces.front().order;
      unsigned b = 1;
      while (static_cast<arith::u128>(e) * phi_prime_power(p, b) % c != 0) ++b;
      f *= ipow(p, b);
    }
  }
  return f;
}

DirichletCharacter lift(const DirichletCharacter& chi, u64 n) {
  n = normalize_modulus(n);
  if (n % chi.modulus() != 0)
    throw ModulusMismatch("cannot lift a character mod " + std::to_string(chi.modulus()) + " to modulus " +
                          std::to_string(n));
  if (n == chi.modulus()) return chi;
  DirichletCharacter out(n);
  std::vector<u64> e;
  for (const auto& comp : out.structure().components) {
    for (const auto& piece : comp.pieces) {
      const auto v = evaluate(chi, static_cast<std::int64_t>(piece.generator));
      e.push_back(v.exponent * piece.order / v.order);
    }
  }
  return DirichletCharacter::from_exponents(n, std::move(e));
}

DirichletCharacter quadratic_character(std::int64_t m) {
  if (m == 0 || m == 1 || !arith::is_squarefree(static_cast<u64>(m < 0 ? -m : m)))
    throw NotSquarefree("quadratic character needs a squarefree m != 0, 1");
  const std::int64_t d = arith::mod_floor(m, 4) == 1 ? m : 4 * m;
  const u64 n = static_cast<u64>(d < 0 ? -d : d);
  DirichletCharacter out(n);
  std::vector<u64> e;
  for (const auto& comp : out.structure().components)
    for (const auto& piece : comp.pieces) e.push_back(arith::kronecker(d, piece.generator) == -1 ? piece.order / 2 : 0);
  return DirichletCharacter::from_exponents(n, std::move(e));
}

CharacterGroup::CharacterGroup(u64 n) : modulus_(normalize_modulus(n)) {
  orders_ = DirichletCharacter(modulus_).piece_orders();
  std::vector<BigInt> diag;
  for (u64 c : orders_) diag.push_back(big(c));
  hnf_ = IntMatrix::diagonal(diag);
}

CharacterGroup CharacterGroup::full_dual(u64 n) {
  n = normalize_modulus(n);
  const auto orders = DirichletCharacter(n).piece_orders();
  std::vector<DirichletCharacter> gens;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::vector<u64> e(orders.size(), 0);
    e[i] = 1;
    gens.push_back(DirichletCharacter::from_exponents(n, e));
  }
  return group_generated(gens, n);
}

CharacterGroup group_generated(const std::vector<DirichletCharacter>& chars, u64 n) {
  CharacterGroup g(n);
  const std::size_t k = g.orders_.size();
  for (const auto& chi : chars)
    if (chi.modulus() != g.modulus_)
      throw ModulusMismatch("character mod " + std::to_string(chi.modulus()) + " in a group mod " +
                            std::to_string(g.modulus_));
  if (k == 0) return g;
  IntMatrix rows(chars.size() + k, k);
  for (std::size_t r = 0; r < chars.size(); ++r)
    for (std::size_t i = 0; i < k; ++i) rows(r, i) = big(chars[r].exponents()[i]);
  for (std::size_t i = 0; i < k; ++i) rows(chars.size() + i, i) = big(g.orders_[i]);
  g.hnf_ = hermite_normal_form_rows(rows);

  BigInt total = 1, det = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= big(g.orders_[i]);
    det *= g.hnf_(i, i);
  }
  g.order_ = to_u64(total / det);

  // c_i e_i = Y_i H; the group is Z^k / rowspan(Y) in H-coordinates
  IntMatrix yt(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<BigInt> target(k, 0);
    target[i] = big(g.orders_[i]);
    const auto y = *solve_upper(g.hnf_, target);
    for (std::size_t j = 0; j < k; ++j) yt(j, i) = y[j];
  }
  const auto snf = smith_normal_form_full(yt);
  for (std::size_t j = 0; j < k; ++j) {
    const BigInt& dj = snf.D(j, j);
    if (dj == 1) continue;
    std::vector<u64> e(k);
    for (std::size_t col = 0; col < k; ++col) {
      BigInt acc = 0;
      for (std::size_t r = 0; r < k; ++r) acc += snf.U_inverse(r, j) * g.hnf_(r, col);
      acc %= big(g.orders_[col]);
      if (acc < 0) acc += big(g.orders_[col]);
      e[col] = to_u64(acc);
    }
    g.basis_.push_back(DirichletCharacter::from_exponents(g.modulus_, std::move(e)));
    g.basis_orders_.push_back(to_u64(dj));
  }
  return g;
}

abelian::FinAbGroup CharacterGroup::structure() const {
  std::vector<BigInt> o;
  for (u64 d : basis_orders_) o.push_back(big(d));
  return abelian::FinAbGroup::from_cyclic_orders(o);
}

bool CharacterGroup::contains(const DirichletCharacter& chi) const {
  if (chi.modulus() != modulus_) return false;
  if (orders_.empty()) return true;
  std::vector<BigInt> v;
  for (u64 e : chi.exponents()) v.push_back(big(e));
  return solve_upper(hnf_, v).has_value();
}

bool CharacterGroup::contains(const CharacterGroup& other) const {
  if (other.modulus_ != modulus_) return false;
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const auto& chi) { return contains(chi); });
}

std::vector<DirichletCharacter> CharacterGroup::elements() const {
  std::vector<DirichletCharacter> out;
  out.reserve(order_);
  std::vector<u64> digits(basis_.size(), 0);
  for (u64 idx = 0; idx < order_; ++idx) {
    DirichletCharacter chi(modulus_);
    for (std::size_t j = 0; j < basis_.size(); ++j)
      if (digits[j]) chi = chi * basis_[j].pow(digits[j]);
    out.push_back(std::move(chi));
    for (std::size_t j = basis_.size(); j-- > 0;) {
      if (++digits[j] < basis_orders_[j]) break;
      digits[j] = 0;
    }
  }
  return out;
}

CharacterGroup component_group(const CharacterGroup& x, u64 p) {
  u64 q = 1;
  for (const auto& comp : DirichletCharacter(x.modulus()).structure().components)
    if (comp.p == p) q = comp.prime_power;
  std::vector<DirichletCharacter> gens;
  for (const auto& chi : x.basis()) gens.push_back(p_component(chi, p));
  return group_generated(gens, q);
}

u64 ramification_index(const CharacterGroup& x, u64 p) { return component_group(x, p).order(); }

CharacterGroup genus_group(const CharacterGroup& x) {
  std::vector<DirichletCharacter> gens;
  for (const auto& comp : DirichletCharacter(x.modulus()).structure().components) {
    const auto xp = component_group(x, comp.p);
    for (const auto& chi : xp.basis()) gens.push_back(lift(chi, x.modulus()));
  }
  return group_generated(gens, x.modulus());
}

CharacterGroup plus_subgroup(const CharacterGroup& x) {
  const auto& b = x.basis();
  std::optional<std::size_t> first_odd;
  std::vector<DirichletCharacter> gens;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j].is_even()) {
      gens.push_back(b[j]);
    } else if (!first_odd) {
      first_odd = j;
      gens.push_back(b[j].pow(2));
    } else {
      gens.push_back(b[j] * b[*first_odd]);
    }
  }
  if (!first_odd) return x;
  return group_generated(gens, x.modulus());
}

FieldInvariants field_invariants(const CharacterGroup& x) {
  u64 f = 1;
  for (const auto& chi : x.basis()) f = lcm(f, conductor(chi));
  return {x.order(), f};
}

ExponentCheck exponent_check(const CharacterGroup& x, u64 m, u64 d, bool strict) {
  m = normalize_modulus(m);
  const u64 n = x.modulus();
  if (n % m != 0) throw PreconditionFailed("Q(zeta_" + std::to_string(m) + ") is not inside a field of conductor dividing " + std::to_string(n));
  const auto dual_m = CharacterGroup::full_dual(m);
  for (const auto& chi : dual_m.basis())
    if (!x.contains(lift(chi, n)))
      throw PreconditionFailed("the dual of (Z/" + std::to_string(m) + "Z)* is not contained in X");
  const auto genus = genus_group(x);
  const auto candidates = strict ? genus.elements() : genus.basis();
  ExponentCheck out;
  for (const auto& chi : candidates) {
    if (m % conductor(chi.pow(d)) != 0) {
      out.ok = false;
      out.witness = chi;
      return out;
    }
  }
  return out;
}

std::vector<CharacterGroup> all_subgroups(const CharacterGroup& x, u64 max_order) {
  if (x.order() > max_order)
    throw GroupTooLarge("subgroup enumeration needs #X <= " + std::to_string(max_order));
  const std::size_t n = x.order();
  const auto& radix = x.structure_orders();
  const std::size_t k = radix.size();
  std::vector<std::vector<u64>> digits(n, std::vector<u64>(k));
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t t = idx;
    for (std::size_t j = k; j-- > 0;) {
      digits[idx][j] = t % radix[j];
      t /= radix[j];
    }
  }
  auto add = [&](std::size_t a, std::size_t b) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < k; ++j) idx = idx * radix[j] + (digits[a][j] + digits[b][j]) % radix[j];
    return idx;
  };

  struct Sub {
    std::vector<bool> mask;
    std::vector<std::size_t> gens;
  };
  std::set<std::vector<bool>> seen;
  std::vector<Sub> all;
  std::vector<Sub> frontier;
  std::vector<bool> trivial(n, false);
  trivial[0] = true;
  frontier.push_back({trivial, {}});
  seen.insert(trivial);
  while (!frontier.empty()) {
    std::vector<Sub> next;
    for (const auto& h : frontier) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (h.mask[i]) members.push_back(i);
      for (std::size_t g = 0; g < n; ++g) {
        if (h.mask[g]) continue;
        std::vector<bool> ext = h.mask;
        for (std::size_t kg = g; !h.mask[kg]; kg = add(kg, g))
          for (auto m : members) ext[add(m, kg)] = true;
        if (seen.insert(ext).second) {
          auto gens = h.gens;
          gens.push_back(g);
          next.push_back({std::move(ext), std::move(gens)});
        }
      }
      all.push_back(h);
    }
    frontier = std::move(next);
  }

  const auto elems = x.elements();
  std::vector<CharacterGroup> out;
  out.reserve(all.size());
  for (const auto& h : all) {
    std::vector<DirichletCharacter> gens;
    for (auto g : h.gens) gens.push_back(elems[g]);
    out.push_back(group_generated(gens, x.modulus()));
  }
  return out;
}

abelian::FinAbGroup decomposition_group(const arith::Factorization& f, const BigInt& p, Ambient ambient) {
  const arith::PrimePower* at_p = nullptr;
  for (const auto& pp : f.factors)
    if (pp.p == p) at_p = &pp;
  if (!at_p) throw UnramifiedPrime("prime " + p.get_str() + " does not divide the conductor");
  if (!fits_u64(p)) throw InvalidModulus("prime too large for componentwise orders");
  const u64 pu = to_u64(p);
  const unsigned a = at_p->exponent;

  // inertia: (Z/p^a)* as cyclic pieces, and the coordinates of -1 on them
  std::vector<BigInt> orders;
  std::vector<BigInt> minus_one;
  if (pu == 2) {
    if (a >= 2) {
      orders.push_back(2);
      minus_one.push_back(1);
    }
    if (a >= 3) {
      orders.push_back(big(ipow(2, a - 2)));
      minus_one.push_back(0);
    }
  } else {
    const u64 c = phi_prime_power(pu, a);
    orders.push_back(big(c));
    minus_one.push_back(big(c / 2));
  }

  // Frobenius: order of p modulo each other prime power, and k with p^k = -1 there
  BigInt frob_order = 1;
  BigInt k_res = 0, k_mod = 1;
  bool minus_one_in_frob = true;
  for (const auto& pp : f.factors) {
    if (pp.p == p) continue;
    BigInt qb;
    mpz_pow_ui(qb.get_mpz_t(), pp.p.get_mpz_t(), pp.exponent);
    if (!fits_u64(qb)) throw InvalidModulus("prime power too large for componentwise orders");
    const u64 q = to_u64(qb);
    const u64 o = arith::multiplicative_order(pu % q, q);
    frob_order = ::lcm(frob_order, big(o));
    if (q == 2 || !minus_one_in_frob) continue;
    if (o % 2 != 0 || pow_mod(pu % q, o / 2, q) != q - 1) {
      minus_one_in_frob = false;
      continue;
    }
    if (!crt_merge(k_res, k_mod, big(o / 2), big(o))) minus_one_in_frob = false;
  }
  orders.push_back(frob_order);
  minus_one.push_back(k_res);

  abelian::Presentation pres{orders.size(), IntMatrix::diagonal(orders)};
  if (ambient == Ambient::Plus && minus_one_in_frob) return abelian::quotient_by_element(pres, minus_one);
  return abelian::from_presentation(pres);
}

}  // namespace cyclocert::characters
