#pragma once

#include <cstddef>
#include <vector>

#include "cyclocert/matrix.hpp"

namespace cyclocert {

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  std::vector<BigInt> diagonal() const;
};

/// Smith form plus the inverses of the transforms.
struct SmithFormFull : SmithForm {
  IntMatrix U_inverse;
  IntMatrix V_inverse;
};

struct SnfOptions {
  /// Run row/column elimination sweeps under OpenMP when the active block is large.
  bool parallel = true;
  /// Active-block size (rows * cols) below which sweeps stay serial.
  std::size_t parallel_threshold = 1 << 14;
};

/// Minimal-pivot elimination; 64-bit fast path with exact arbitrary-precision fallback on overflow.
SmithForm smith_normal_form(const IntMatrix& a, const SnfOptions& opts = {});
SmithFormFull smith_normal_form_full(const IntMatrix& a, const SnfOptions& opts = {});

/// Nonzero diagonal entries of the Smith form; transforms are not tracked.
std::vector<BigInt> elementary_divisors(const IntMatrix& a, const SnfOptions& opts = {});

std::size_t matrix_rank(const IntMatrix& a);

/// Serial extended-gcd Smith form, kept as an independent reference for testing.
SmithForm smith_normal_form_reference(const IntMatrix& a);

/// Row Hermite normal form of the lattice spanned by the rows of `a`:
/// echelon form, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped, so the result is the canonical basis of the row lattice.
IntMatrix hermite_normal_form_rows(const IntMatrix& a);

}  // namespace cyclocert
