#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclocert/abelian.hpp"
#include "cyclocert/bigint.hpp"

namespace cyclocert::quadratic {

using i64 = std::int64_t;

/// a x^2 + b x y + c y^2 with positive non-square discriminant.
struct QuadForm {
  i64 a = 0, b = 0, c = 0;

  i64 discriminant() const;
  /// gcd(a, b, c) = 1, D > 0, D = 0 or 1 mod 4, D not a square.
  bool is_valid() const;
  std::string to_string() const;

  auto operator<=>(const QuadForm&) const = default;
};

/// m if m = 1 mod 4, else 4m. Throws NotSquarefree unless m > 1 is squarefree.
i64 fundamental_discriminant(i64 m);
bool is_fundamental(i64 d);

/// (1, b, (b^2 - D)/4) with b maximal below sqrt(D), b = D mod 2.
QuadForm principal_form(i64 d);
/// The inverse class (a, -b, c).
QuadForm opposite(const QuadForm& f);

/// 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b, decided in exact arithmetic.
bool is_reduced(const QuadForm& f);
/// One proper equivalence (a, b, c) -> (c, b', a'), b' = -b mod 2c.
QuadForm rho_step(const QuadForm& f);
QuadForm reduce(const QuadForm& f);

/// Every reduced form of discriminant D, sorted.
std::vector<QuadForm> reduced_forms(i64 d);
/// Rho-orbits of the reduced forms; the first cycle holds the principal form and every cycle
/// starts at its smallest form.
std::vector<std::vector<QuadForm>> reduced_cycles(i64 d);

/// Dirichlet composition, reduced. Throws DiscriminantMismatch.
QuadForm compose(const QuadForm& f, const QuadForm& g);

/// epsilon = (x + y sqrt(D)) / 2 > 1, the smallest unit of the maximal order.
struct FundamentalUnit {
  BigInt x, y;
  int norm = 1;
};
FundamentalUnit fundamental_unit(i64 d);

/// Period data of the continued fraction of (D mod 2 + sqrt(D)) / 2 in double precision.
struct UnitSummary {
  int norm = 1;
  std::size_t period = 0;
  double regulator = 0;
};
UnitSummary unit_summary(i64 d);

inline constexpr i64 kMaxClassGroupDisc = 100'000'000;

struct ClassGroupResult {
  i64 D = 0;
  std::uint64_t h_narrow = 0, h_wide = 0;
  abelian::FinAbGroup structure_narrow, structure_wide;
  int unit_norm = 1;
  double regulator = 0;
};

/// Narrow group on cycle representatives; wide group = narrow / <class of a form with a = -1>.
/// Throws NotFundamental, and GroupTooLarge above max_disc.
ClassGroupResult class_group(i64 d, i64 max_disc = kMaxClassGroupDisc);

struct AnalyticEstimate {
  std::uint64_t h = 0;
  double value = 0;
  double error_bound = 0;
};

/// round(sqrt(D) L(1, chi_D) / (2 log epsilon)) with L truncated after `terms` terms and the tail
/// bounded through the maximal partial character sum. Throws InconclusiveRounding when the error
/// bar reaches a half-integer, std::invalid_argument when terms < 10^4.
AnalyticEstimate analytic_h_oracle(i64 d, std::uint64_t terms = 2'000'000);

/// Fundamental D <= d_max whose wide class group has an element of order r, ascending.
std::vector<i64> search_order_r(std::uint64_t r, i64 d_max);
/// Single-threaded reference for search_order_r.
std::vector<i64> search_order_r_serial(std::uint64_t r, i64 d_max);

/// Class numbers quoted from the literature, kept as constants and never computed here.
namespace reference {
inline constexpr std::uint64_t kClassNumberSqrt105 = 2;
inline constexpr std::uint64_t kClassNumberSqrt55 = 2;
inline constexpr std::uint64_t kClassNumberRealCyclotomic420 = 1;
inline constexpr std::uint64_t kClassNumberRealCyclotomic220 = 1;
inline constexpr std::uint64_t kClassNumberRealCyclotomic91 = 1;
/// The cyclic cubic field cut out by x^3 - 44x^2 + 524x - 944, a subfield of Q(zeta_91)^+.
inline constexpr std::uint64_t kClassNumberCubic91 = 3;
}  // namespace reference

}  // namespace cyclocert::quadratic
