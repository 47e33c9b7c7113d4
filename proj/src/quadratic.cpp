#include "cyclocert/quadratic.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cyclocert/arith.hpp"
#include "cyclocert/errors.hpp"

namespace cyclocert::quadratic {

namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// g = x a + y b, g = gcd(a, b) >= 0
struct Xgcd {
  i128 g, x, y;
};
Xgcd xgcd(i128 a, i128 b) {
  i128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    i128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
    t = t0 - q * t1;
    t0 = t1;
    t1 = t;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 mod_floor(i128 a, i128 m) {
  const i128 r = a % m;
  return r < 0 ? r + m : r;
}

i64 checked_i64(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("form coefficient exceeds 64 bits");
  return static_cast<i64>(v);
}

i64 sqrt_floor(i64 d) { return static_cast<i64>(arith::isqrt(static_cast<std::uint64_t>(d))); }

void require_valid(const QuadForm& f) {
  if (!f.is_valid()) throw PreconditionFailed("not a primitive form of positive non-square discriminant: " + f.to_string());
}

void require_fundamental(i64 d) {
  if (!is_fundamental(d)) throw NotFundamental(std::to_string(d) + " is not a fundamental discriminant");
}

/// Cycle index of every reduced form of one discriminant.
class CycleIndex {
 public:
  explicit CycleIndex(i64 d) : cycles_(reduced_cycles(d)) {
    for (std::size_t i = 0; i < cycles_.size(); ++i)
      for (const auto& f : cycles_[i]) index_.emplace(f, i);
  }
  std::size_t size() const { return cycles_.size(); }
  std::size_t class_of(const QuadForm& f) const { return index_.at(reduce(f)); }
  const QuadForm& representative(std::size_t i) const { return cycles_[i].front(); }
  std::size_t multiply(std::size_t i, std::size_t j) const {
    return class_of(compose(representative(i), representative(j)));
  }

 private:
  std::vector<std::vector<QuadForm>> cycles_;
  std::map<QuadForm, std::size_t> index_;
};

/// Coordinates of every class on a generating set found greedily, plus the relations among them.
struct ClassCoordinates {
  std::vector<std::vector<i64>> coords;  // per class, padded to the final generator count
  std::vector<std::vector<i64>> relations;
  std::size_t generators = 0;
};

ClassCoordinates coordinatize(const CycleIndex& cl) {
  const std::size_t h = cl.size();
  std::vector<std::vector<i64>> coords(h);
  std::vector<bool> known(h, false);
  std::vector<std::size_t> members{0};
  known[0] = true;  // the principal cycle comes first
  std::vector<std::vector<i64>> relations;
  std::size_t gens = 0;
  for (std::size_t x = 0; x < h; ++x) {
    if (known[x]) continue;
    const std::size_t k = gens++;
    for (auto& c : coords) c.resize(gens, 0);
    for (auto& r : relations) r.resize(gens, 0);
    // smallest j with x^j in the current subgroup
    std::vector<std::size_t> powers{0, x};
    while (!known[powers.back()]) powers.push_back(cl.multiply(powers.back(), x));
    const std::size_t j = powers.size() - 1;
    std::vector<i64> rel(gens, 0);
    for (std::size_t i = 0; i < gens; ++i) rel[i] = -coords[powers.back()][i];
    rel[k] += static_cast<i64>(j);
    relations.push_back(std::move(rel));
    const std::vector<std::size_t> old = members;
    for (std::size_t i = 1; i < j; ++i)
      for (auto m : old) {
        const std::size_t z = cl.multiply(m, powers[i]);
        auto c = coords[m];
        c[k] += static_cast<i64>(i);
        coords[z] = std::move(c);
        known[z] = true;
        members.push_back(z);
      }
  }
  for (auto& c : coords) c.resize(gens, 0);
  return {std::move(coords), std::move(relations), gens};
}

abelian::FinAbGroup group_from(std::size_t gens, const std::vector<std::vector<i64>>& relations) {
  IntMatrix rel(gens, relations.size());
  for (std::size_t j = 0; j < relations.size(); ++j)
    for (std::size_t i = 0; i < gens; ++i) rel(i, j) = big_signed(relations[j][i]);
  return abelian::from_presentation(gens, rel);
}

}  // namespace

i64 QuadForm::discriminant() const { return checked_i64(i128(b) * b - i128(4) * a * c); }

bool QuadForm::is_valid() const {
  const i128 d = i128(b) * b - i128(4) * a * c;
  if (d <= 0 || d > INT64_MAX) return false;
  if (d % 4 != 0 && d % 4 != 1) return false;
  const i64 s = sqrt_floor(static_cast<i64>(d));
  if (i128(s) * s == d) return false;
  return gcd128(gcd128(a, b), c) == 1;
}

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << '(' << a << ", " << b << ", " << c << ')';
  return os.str();
}

i64 fundamental_discriminant(i64 m) {
  if (m <= 1 || !arith::is_squarefree(static_cast<std::uint64_t>(m)))
    throw NotSquarefree(std::to_string(m) + " is not a squarefree integer > 1");
  return m % 4 == 1 ? m : checked_i64(i128(4) * m);
}

bool is_fundamental(i64 d) {
  if (d <= 1) return false;
  if (d % 4 == 1) return arith::is_squarefree(static_cast<std::uint64_t>(d));
  if (d % 4 != 0) return false;
  const i64 m = d / 4;
  return (m % 4 == 2 || m % 4 == 3) && arith::is_squarefree(static_cast<std::uint64_t>(m));
}

QuadForm principal_form(i64 d) {
  const i64 s = sqrt_floor(d);
  const i64 b = (s - d) % 2 == 0 ? s : s - 1;
  return {1, b, (b * b - d) / 4};
}

QuadForm opposite(const QuadForm& f) { return {f.a, -f.b, f.c}; }

bool is_reduced(const QuadForm& f) {
  const i128 d = i128(f.b) * f.b - i128(4) * f.a * f.c;
  if (f.b <= 0 || i128(f.b) * f.b >= d) return false;
  const i128 two_a = 2 * abs128(f.a);
  // sqrt(D) - b < 2|a| iff D < (2|a| + b)^2
  if (d >= (two_a + f.b) * (two_a + f.b)) return false;
  // 2|a| < sqrt(D) + b iff 2|a| - b <= 0 or (2|a| - b)^2 < D
  const i128 gap = two_a - f.b;
  return gap <= 0 || gap * gap < d;
}

QuadForm rho_step(const QuadForm& f) {
  require_valid(f);
  const i128 d = i128(f.b) * f.b - i128(4) * f.a * f.c;
  const i128 s = sqrt_floor(static_cast<i64>(d));
  const i128 m = 2 * abs128(f.c);
  i128 b;
  if (i128(f.c) * f.c < d) {
    // largest b' < sqrt(D) with b' = -b mod 2|c|
    b = s - mod_floor(s + f.b, m);
  } else {
    // b' in (-|c|, |c|]
    b = mod_floor(-i128(f.b), m);
    if (b > abs128(f.c)) b -= m;
  }
  const i128 a2 = (b * b - d) / (4 * i128(f.c));
  return {f.c, checked_i64(b), checked_i64(a2)};
}

QuadForm reduce(const QuadForm& f) {
  require_valid(f);
  QuadForm g = f;
  while (!is_reduced(g)) g = rho_step(g);
  return g;
}

std::vector<QuadForm> reduced_forms(i64 d) {
  if (!QuadForm{1, d % 2, (d % 2 - d) / 4}.is_valid())
    throw PreconditionFailed(std::to_string(d) + " is not a positive non-square discriminant");
  const i64 s = sqrt_floor(d);
  std::vector<QuadForm> out;
  for (i64 b = (d % 2 == 0 ? 2 : 1); b <= s; b += 2) {
    const i64 n = (d - b * b) / 4;  // = -ac
    // sqrt(D) - b < 2a < sqrt(D) + b, a > 0
    for (i64 a = std::max<i64>(1, (s - b) / 2); 2 * a <= s + b; ++a) {
      if (n % a != 0) continue;
      const QuadForm plus{a, b, -n / a}, minus{-a, b, n / a};
      if (!is_reduced(plus)) continue;
      if (plus.is_valid()) out.push_back(plus);
      if (minus.is_valid()) out.push_back(minus);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<QuadForm>> reduced_cycles(i64 d) {
  const auto forms = reduced_forms(d);
  std::map<QuadForm, bool> seen;
  std::vector<std::vector<QuadForm>> cycles;
  const QuadForm principal = reduce(principal_form(d));
  auto walk = [&](const QuadForm& start) {
    std::vector<QuadForm> cycle;
    QuadForm g = start;
    do {
      cycle.push_back(g);
      seen[g] = true;
      g = rho_step(g);
    } while (g != start);
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    cycles.push_back(std::move(cycle));
  };
  walk(principal);
  for (const auto& f : forms)
    if (!seen.count(f)) walk(f);
  return cycles;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const i64 d = f.discriminant();
  if (g.discriminant() != d)
    throw DiscriminantMismatch("discriminants " + std::to_string(d) + " and " + std::to_string(g.discriminant()));
  const QuadForm f1 = reduce(f), f2 = reduce(g);
  const i128 a1 = f1.a, b1 = f1.b, a2 = f2.a, b2 = f2.b;
  const i128 s = (b1 + b2) / 2;
  // e = mu a1 + nu a2 + omega s = gcd(a1, a2, s)
  const Xgcd first = xgcd(a1, a2);
  const Xgcd second = xgcd(first.g, s);
  const i128 e = second.g;
  const i128 mu = second.x * first.x, nu = second.x * first.y, omega = second.y;
  const i128 a3 = a1 * a2 / (e * e);
  i128 b3 = (mu * a1 * b2 + nu * a2 * b1 + omega * ((b1 * b2 + d) / 2)) / e;
  const i128 m = 2 * abs128(a3);
  b3 = mod_floor(b3, m);
  if (b3 > abs128(a3)) b3 -= m;
  const i128 num = b3 * b3 - d;
  if (num % (4 * a3) != 0) throw Error("composition produced a non-integral form");
  return reduce({checked_i64(a3), checked_i64(b3), checked_i64(num / (4 * a3))});
}

FundamentalUnit fundamental_unit(i64 d) {
  require_fundamental(d);
  const i64 s = sqrt_floor(d);
  const i64 r = d % 2;
  // complete quotient (P + sqrt(D)) / Q of (r + sqrt(D)) / 2
  i128 p_val = r, q_val = 2;
  BigInt p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  const BigInt disc = big_signed(d);
  for (;;) {
    const i128 a = floor_div(p_val + s, q_val);
    const BigInt ab = big_signed(checked_i64(a));
    BigInt p = ab * p1 + p2, q = ab * q1 + q2;
    BigInt x = 2 * p - r * q;
    const BigInt norm = x * x - disc * q * q;
    if (norm == 4 || norm == -4) return {x, q, norm > 0 ? 1 : -1};
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    p_val = a * q_val - p_val;
    q_val = (i128(d) - p_val * p_val) / q_val;
  }
}

UnitSummary unit_summary(i64 d) {
  require_fundamental(d);
  const i64 s = sqrt_floor(d);
  const double root = std::sqrt(static_cast<double>(d));
  i128 p_val = d % 2, q_val = 2;
  auto advance = [&] {
    const i128 a = floor_div(p_val + s, q_val);
    p_val = a * q_val - p_val;
    q_val = (i128(d) - p_val * p_val) / q_val;
  };
  // from the first complete quotient on the expansion is purely periodic
  advance();
  const i128 p_start = p_val, q_start = q_val;
  UnitSummary out;
  do {
    out.regulator += std::log((static_cast<double>(p_val) + root) / static_cast<double>(q_val));
    ++out.period;
    advance();
  } while (p_val != p_start || q_val != q_start);
  out.norm = out.period % 2 == 0 ? 1 : -1;
  return out;
}

ClassGroupResult class_group(i64 d, i64 max_disc) {
  require_fundamental(d);
  if (d > max_disc)
    throw GroupTooLarge("discriminant " + std::to_string(d) + " above the bound " + std::to_string(max_disc));
  const CycleIndex cl(d);
  const auto coords = coordinatize(cl);
  ClassGroupResult out;
  out.D = d;
  out.structure_narrow = group_from(coords.generators, coords.relations);
  out.h_narrow = cl.size();
  if (out.structure_narrow.order() != out.h_narrow)
    throw Error("class group of " + std::to_string(d) + ": relation lattice does not match the cycle count");
  // (-1, r, (D - r^2)/4) has discriminant D; its class is trivial iff a unit of norm -1 exists
  const i64 r = d % 2;
  const std::size_t twist = cl.class_of({-1, r, (d - r * r) / 4});
  auto relations = coords.relations;
  relations.push_back(coords.coords[twist]);
  out.structure_wide = group_from(coords.generators, relations);
  out.h_wide = to_u64(out.structure_wide.order());
  const UnitSummary unit = unit_summary(d);
  out.unit_norm = unit.norm;
  out.regulator = unit.regulator;
  if ((twist == 0) != (unit.norm == -1))
    throw Error("class group of " + std::to_string(d) + ": unit norm disagrees with the form twist");
  return out;
}

AnalyticEstimate analytic_h_oracle(i64 d, std::uint64_t terms) {
  require_fundamental(d);
  if (terms < 10'000) throw std::invalid_argument("analytic oracle needs at least 10^4 terms");
  const auto period = static_cast<std::uint64_t>(d);
  std::vector<int> chi(period);
  long long partial = 0, max_partial = 0;
  for (std::uint64_t n = 0; n < period; ++n) {
    chi[n] = n == 0 ? 0 : arith::kronecker(d, n);
    partial += chi[n];
    max_partial = std::max(max_partial, partial < 0 ? -partial : partial);
  }
  // Kahan summation of sum_{n <= T} chi(n) / n
  long double sum = 0, comp = 0;
  std::uint64_t idx = 1 % period;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    if (chi[idx] != 0) {
      const long double y = static_cast<long double>(chi[idx]) / static_cast<long double>(n) - comp;
      const long double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    if (++idx == period) idx = 0;
  }
  // |sum_{n > T} chi(n)/n| <= 2 B / (T + 1) by partial summation
  const long double tail = 2.0L * max_partial / (static_cast<long double>(terms) + 1);
  const long double rounding = 8.0L * LDBL_EPSILON * (2.0L + std::log(static_cast<long double>(terms)));
  const long double l_err = tail + rounding;
  const UnitSummary unit = unit_summary(d);
  const long double reg = unit.regulator;
  const long double reg_err = reg * 8.0L * DBL_EPSILON * static_cast<long double>(unit.period + 1);
  if (sum - l_err <= 0 || reg - reg_err <= 0)
    throw InconclusiveRounding("L-value or regulator not separated from zero at D = " + std::to_string(d));
  const long double scale = std::sqrt(static_cast<long double>(d)) / 2;
  const long double value = scale * sum / reg;
  const long double err = value * (l_err / sum + reg_err / (reg - reg_err)) + 1e-12L;
  const long double nearest = std::round(value);
  if (std::fabs(value - nearest) + err >= 0.5L || nearest < 1)
    throw InconclusiveRounding("estimate " + std::to_string(static_cast<double>(value)) + " +- " +
                               std::to_string(static_cast<double>(err)) + " does not round uniquely");
  return {static_cast<std::uint64_t>(nearest), static_cast<double>(value), static_cast<double>(err)};
}

namespace {

bool has_order_r(i64 d, std::uint64_t r) {
  return class_group(d).structure_wide.exponent() % big(r) == 0;
}

}  // namespace

std::vector<i64> search_order_r_serial(std::uint64_t r, i64 d_max) {
  if (r < 2) throw std::invalid_argument("order must be at least 2");
  std::vector<i64> out;
  for (i64 d = 5; d <= d_max; ++d)
    if (is_fundamental(d) && has_order_r(d, r)) out.push_back(d);
  return out;
}

std::vector<i64> search_order_r(std::uint64_t r, i64 d_max) {
  if (r < 2) throw std::invalid_argument("order must be at least 2");
  if (d_max < 5) return {};
  std::vector<char> hit(static_cast<std::size_t>(d_max + 1), 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (i64 d = 5; d <= d_max; ++d) {
    if (!is_fundamental(d)) continue;
    try {
      hit[static_cast<std::size_t>(d)] = has_order_r(d, r) ? 1 : 0;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<i64> out;
  for (i64 d = 5; d <= d_max; ++d)
    if (hit[static_cast<std::size_t>(d)]) out.push_back(d);
  return out;
}

}  // namespace cyclocert::quadratic
