#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace cyclocert {

using BigInt = mpz_class;

inline BigInt big(std::uint64_t x) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return r;
}

inline BigInt big_signed(std::int64_t x) {
  if (x >= 0) return big(static_cast<std::uint64_t>(x));
  // -(x+1) avoids negating INT64_MIN
  BigInt r = big(static_cast<std::uint64_t>(-(x + 1)));
  return -r - 1;
}

inline bool fits_u64(const BigInt& x) {
  return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline bool fits_i64(const BigInt& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62 || (sgn(x) == 0);
}

inline std::uint64_t to_u64(const BigInt& x) {
  std::uint64_t r = 0;
  if (sgn(x) == 0) return 0;
  size_t count = 0;
  mpz_export(&r, &count, 1, sizeof(r), 0, 0, x.get_mpz_t());
  return r;
}

/// Only valid when fits_i64(x).
inline std::int64_t to_i64(const BigInt& x) {
  BigInt a = abs(x);
  auto m = static_cast<std::int64_t>(to_u64(a));
  return sgn(x) < 0 ? -m : m;
}

inline std::string to_string(const BigInt& x) { return x.get_str(10); }

}  // namespace cyclocert
