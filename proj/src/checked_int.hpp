#pragma once

#include <cstdint>
#include <limits>

#include "cyclocert/bigint.hpp"

namespace cyclocert::detail {

struct Overflow {};

/// int64 that throws Overflow instead of wrapping.
struct Checked64 {
  std::int64_t v = 0;

  Checked64() = default;
  Checked64(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (a.v == std::numeric_limits<std::int64_t>::min() && b.v == -1) throw Overflow{};
    return a.v / b.v;
  }
  friend Checked64 operator%(Checked64 a, Checked64 b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  Checked64 operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return -v;
  }
  Checked64& operator+=(Checked64 b) { return *this = *this + b; }
  Checked64& operator-=(Checked64 b) { return *this = *this - b; }
  friend bool operator==(Checked64 a, Checked64 b) { return a.v == b.v; }
  friend auto operator<=>(Checked64 a, Checked64 b) { return a.v <=> b.v; }
};

inline bool is_zero(const Checked64& x) { return x.v == 0; }
inline bool is_zero(const BigInt& x) { return sgn(x) == 0; }
inline int sign_of(const Checked64& x) { return (x.v > 0) - (x.v < 0); }
inline int sign_of(const BigInt& x) { return sgn(x); }
inline Checked64 abs_of(const Checked64& x) { return x.v < 0 ? -x : x; }
inline BigInt abs_of(const BigInt& x) { return abs(x); }
inline int cmp_abs(const Checked64& a, const Checked64& b) {
  // compare magnitudes without negating INT64_MIN
  const auto ua = a.v < 0 ? ~static_cast<std::uint64_t>(a.v) + 1 : static_cast<std::uint64_t>(a.v);
  const auto ub = b.v < 0 ? ~static_cast<std::uint64_t>(b.v) + 1 : static_cast<std::uint64_t>(b.v);
  return (ua > ub) - (ua < ub);
}
inline int cmp_abs(const BigInt& a, const BigInt& b) {
  const int c = mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
  return (c > 0) - (c < 0);
}

inline BigInt to_big(const Checked64& x) { return big_signed(x.v); }
inline BigInt to_big(const BigInt& x) { return x; }

template <class Int>
Int from_big(const BigInt& x);
template <>
inline Checked64 from_big<Checked64>(const BigInt& x) {
  return to_i64(x);
}
template <>
inline BigInt from_big<BigInt>(const BigInt& x) {
  return x;
}

}  // namespace cyclocert::detail
