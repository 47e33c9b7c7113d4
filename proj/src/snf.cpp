#include "cyclocert/snf.hpp"

#include <atomic>
#include <optional>
#include <tuple>
#include <utility>

#include "checked_int.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cyclocert {

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> d;
  for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
  return d;
}

namespace detail {
namespace {

template <class Int>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  Dense() = default;
  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
  static Dense identity(std::size_t n) {
    Dense d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = Int(1);
    return d;
  }
  Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
};

template <class Int>
Dense<Int> to_dense(const IntMatrix& m) {
  Dense<Int> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d(i, j) = from_big<Int>(m(i, j));
  return d;
}

template <class Int>
IntMatrix to_matrix(const Dense<Int>& d) {
  IntMatrix m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) m(i, j) = to_big(d(i, j));
  return m;
}

/// Runs body(k) for k in [begin, end), under OpenMP when `parallel`.
/// Overflow raised inside a worker is captured and rethrown on the calling thread.
template <class Body>
void sweep(std::size_t begin, std::size_t end, bool parallel, Body&& body) {
  if (!parallel || end <= begin + 1) {
    for (std::size_t k = begin; k < end; ++k) body(k);
    return;
  }
  std::atomic<bool> overflow{false};
  const auto b = static_cast<std::ptrdiff_t>(begin);
  const auto e = static_cast<std::ptrdiff_t>(end);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = b; k < e; ++k) {
    if (overflow.load(std::memory_order_relaxed)) continue;
    try {
      body(static_cast<std::size_t>(k));
    } catch (const Overflow&) {
      overflow.store(true);
    }
  }
  if (overflow.load()) throw Overflow{};
}

template <class Int>
struct Transforms {
  Dense<Int>* U = nullptr;
  Dense<Int>* U_inv = nullptr;
  Dense<Int>* V = nullptr;
  Dense<Int>* V_inv = nullptr;
};

template <class Int>
class SmithKernel {
 public:
  SmithKernel(Dense<Int>& a, Transforms<Int> tr, const SnfOptions& opts) : a_(a), tr_(tr), opts_(opts) {}

  std::size_t run() {
    const std::size_t limit = std::min(a_.rows, a_.cols);
    std::size_t t = 0;
    for (; t < limit; ++t) {
      auto pivot = find_min_pivot(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      for (;;) {
        eliminate_column(t);
        eliminate_row(t);
        if (auto p = min_in_cross(t)) {
          if (p->first != t) swap_rows(t, p->first);
          if (p->second != t) swap_cols(t, p->second);
          continue;
        }
        if (auto bad = non_divisible_row(t)) {
          add_row(t, *bad);
          continue;
        }
        break;
      }
      if (sign_of(a_(t, t)) < 0) negate_row(t);
    }
    return t;
  }

 private:
  bool par(std::size_t t) const {
    return opts_.parallel && (a_.rows - t) * (a_.cols - t) >= opts_.parallel_threshold;
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_min_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < a_.rows; ++i) {
      for (std::size_t j = t; j < a_.cols; ++j) {
        const Int& x = a_(i, j);
        if (is_zero(x)) continue;
        if (!best || cmp_abs(x, a_(best->first, best->second)) < 0) {
          best = {i, j};
          if (cmp_abs(x, Int(1)) == 0) return best;
        }
      }
    }
    return best;
  }

  /// Smallest nonzero remainder left in row t or column t after elimination.
  std::optional<std::pair<std::size_t, std::size_t>> min_in_cross(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (is_zero(a_(i, j))) return;
      if (!best || cmp_abs(a_(i, j), a_(best->first, best->second)) < 0) best = {i, j};
    };
    for (std::size_t i = t + 1; i < a_.rows; ++i) consider(i, t);
    for (std::size_t j = t + 1; j < a_.cols; ++j) consider(t, j);
    return best;
  }

  std::optional<std::size_t> non_divisible_row(std::size_t t) const {
    const Int& p = a_(t, t);
    for (std::size_t i = t + 1; i < a_.rows; ++i)
      for (std::size_t j = t + 1; j < a_.cols; ++j)
        if (!is_zero(a_(i, j) % p)) return i;
    return std::nullopt;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    a_.swap_rows(i, j);
    if (tr_.U) tr_.U->swap_rows(i, j);
    if (tr_.U_inv) tr_.U_inv->swap_cols(i, j);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    a_.swap_cols(i, j);
    if (tr_.V) tr_.V->swap_cols(i, j);
    if (tr_.V_inv) tr_.V_inv->swap_rows(i, j);
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = t; j < a_.cols; ++j) a_(t, j) = -a_(t, j);
    if (tr_.U)
      for (std::size_t j = 0; j < tr_.U->cols; ++j) (*tr_.U)(t, j) = -(*tr_.U)(t, j);
    if (tr_.U_inv)
      for (std::size_t k = 0; k < tr_.U_inv->rows; ++k) (*tr_.U_inv)(k, t) = -(*tr_.U_inv)(k, t);
  }

  /// row_t += row_i
  void add_row(std::size_t t, std::size_t i) {
    for (std::size_t j = t; j < a_.cols; ++j) a_(t, j) += a_(i, j);
    if (tr_.U)
      for (std::size_t j = 0; j < tr_.U->cols; ++j) (*tr_.U)(t, j) += (*tr_.U)(i, j);
    if (tr_.U_inv)
      for (std::size_t k = 0; k < tr_.U_inv->rows; ++k) (*tr_.U_inv)(k, i) -= (*tr_.U_inv)(k, t);
  }

  /// row_i -= q_i row_t for every i > t; rows are independent.
  void eliminate_column(std::size_t t) {
    const Int p = a_(t, t);
    std::vector<Int> q(a_.rows, Int(0));
    bool any = false;
    for (std::size_t i = t + 1; i < a_.rows; ++i) {
      if (!is_zero(a_(i, t))) {
        q[i] = a_(i, t) / p;
        any = any || !is_zero(q[i]);
      }
    }
    if (!any) return;
    const bool parallel = par(t);
    sweep(t + 1, a_.rows, parallel, [&](std::size_t i) {
      if (is_zero(q[i])) return;
      for (std::size_t j = t; j < a_.cols; ++j) {
        if (!is_zero(a_(t, j))) a_(i, j) -= q[i] * a_(t, j);
      }
      if (tr_.U)
        for (std::size_t j = 0; j < tr_.U->cols; ++j) (*tr_.U)(i, j) -= q[i] * (*tr_.U)(t, j);
    });
    if (tr_.U_inv) {
      Dense<Int>& w = *tr_.U_inv;
      sweep(0, w.rows, parallel, [&](std::size_t k) {
        for (std::size_t i = t + 1; i < a_.rows; ++i)
          if (!is_zero(q[i])) w(k, t) += q[i] * w(k, i);
      });
    }
  }

  /// col_j -= q_j col_t for every j > t; swept by rows so workers never share a row.
  void eliminate_row(std::size_t t) {
    const Int p = a_(t, t);
    std::vector<Int> q(a_.cols, Int(0));
    bool any = false;
    for (std::size_t j = t + 1; j < a_.cols; ++j) {
      if (!is_zero(a_(t, j))) {
        q[j] = a_(t, j) / p;
        any = any || !is_zero(q[j]);
      }
    }
    if (!any) return;
    const bool parallel = par(t);
    sweep(t, a_.rows, parallel, [&](std::size_t k) {
      const Int lead = a_(k, t);
      if (is_zero(lead)) return;
      for (std::size_t j = t + 1; j < a_.cols; ++j)
        if (!is_zero(q[j])) a_(k, j) -= q[j] * lead;
    });
    if (tr_.V) {
      Dense<Int>& v = *tr_.V;
      sweep(0, v.rows, parallel, [&](std::size_t k) {
        const Int lead = v(k, t);
        if (is_zero(lead)) return;
        for (std::size_t j = t + 1; j < a_.cols; ++j)
          if (!is_zero(q[j])) v(k, j) -= q[j] * lead;
      });
    }
    if (tr_.V_inv) {
      Dense<Int>& w = *tr_.V_inv;
      sweep(0, w.cols, parallel, [&](std::size_t c) {
        for (std::size_t j = t + 1; j < a_.cols; ++j)
          if (!is_zero(q[j])) w(t, c) += q[j] * w(j, c);
      });
    }
  }

  Dense<Int>& a_;
  Transforms<Int> tr_;
  SnfOptions opts_;
};

struct Want {
  bool U = false, U_inv = false, V = false, V_inv = false;
};

template <class Int>
SmithFormFull run_smith(const IntMatrix& m, Want want, const SnfOptions& opts) {
  Dense<Int> a = to_dense<Int>(m);
  Dense<Int> U, U_inv, V, V_inv;
  Transforms<Int> tr;
  if (want.U) tr.U = &(U = Dense<Int>::identity(m.rows()));
  if (want.U_inv) tr.U_inv = &(U_inv = Dense<Int>::identity(m.rows()));
  if (want.V) tr.V = &(V = Dense<Int>::identity(m.cols()));
  if (want.V_inv) tr.V_inv = &(V_inv = Dense<Int>::identity(m.cols()));
  SmithFormFull out;
  out.rank = SmithKernel<Int>(a, tr, opts).run();
  out.D = to_matrix(a);
  if (want.U) out.U = to_matrix(U);
  if (want.U_inv) out.U_inverse = to_matrix(U_inv);
  if (want.V) out.V = to_matrix(V);
  if (want.V_inv) out.V_inverse = to_matrix(V_inv);
  return out;
}

bool fits_fast_path(const IntMatrix& m) {
  for (const auto& x : m.data())
    if (!fits_i64(x)) return false;
  return true;
}

SmithFormFull smith_dispatch(const IntMatrix& m, Want want, const SnfOptions& opts) {
  if (fits_fast_path(m)) {
    try {
      return run_smith<Checked64>(m, want, opts);
    } catch (const Overflow&) {
      // fall through to the exact path
    }
  }
  return run_smith<BigInt>(m, want, opts);
}

}  // namespace
}  // namespace detail

SmithForm smith_normal_form(const IntMatrix& a, const SnfOptions& opts) {
  auto full = detail::smith_dispatch(a, {true, false, true, false}, opts);
  return static_cast<SmithForm&>(full);
}

SmithFormFull smith_normal_form_full(const IntMatrix& a, const SnfOptions& opts) {
  return detail::smith_dispatch(a, {true, true, true, true}, opts);
}

std::vector<BigInt> elementary_divisors(const IntMatrix& a, const SnfOptions& opts) {
  auto full = detail::smith_dispatch(a, {}, opts);
  return full.diagonal();
}

std::size_t matrix_rank(const IntMatrix& a) { return elementary_divisors(a).size(); }

namespace {

// g = x*a + y*b with g = gcd(a, b) >= 0, a != 0
// When a | b the result is (|a|, sgn a, 0) so the pivot row or column is kept in place.
std::tuple<BigInt, BigInt, BigInt> xgcd(const BigInt& a, const BigInt& b) {
  if (b % a == 0) return {abs(a), BigInt(sgn(a)), BigInt(0)};
  BigInt g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {g, x, y};
}

}  // namespace

SmithForm smith_normal_form_reference(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix D = a, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  auto row_combine = [&](std::size_t r1, std::size_t r2, const BigInt& x, const BigInt& y, const BigInt& u,
                         const BigInt& v) {
    // [r1; r2] <- [[x, y], [u, v]] [r1; r2]
    for (IntMatrix* M : {&D, &U}) {
      for (std::size_t j = 0; j < M->cols(); ++j) {
        BigInt s = x * (*M)(r1, j) + y * (*M)(r2, j);
        BigInt t = u * (*M)(r1, j) + v * (*M)(r2, j);
        (*M)(r1, j) = s;
        (*M)(r2, j) = t;
      }
    }
  };
  auto col_combine = [&](std::size_t c1, std::size_t c2, const BigInt& x, const BigInt& y, const BigInt& u,
                         const BigInt& v) {
    // [c1, c2] <- [c1, c2] [[x, u], [y, v]]
    for (IntMatrix* M : {&D, &V}) {
      for (std::size_t i = 0; i < M->rows(); ++i) {
        BigInt s = x * (*M)(i, c1) + y * (*M)(i, c2);
        BigInt t = u * (*M)(i, c1) + v * (*M)(i, c2);
        (*M)(i, c1) = s;
        (*M)(i, c2) = t;
      }
    }
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // first nonzero entry of the trailing block, scanning column-major
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t j = t; j < n && !found; ++j)
      for (std::size_t i = t; i < m && !found; ++i)
        if (sgn(D(i, j)) != 0) found = {i, j};
    if (!found) break;
    auto [pi, pj] = *found;
    if (pi != t) row_combine(t, pi, 0, 1, 1, 0);
    if (pj != t) col_combine(t, pj, 0, 1, 1, 0);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(D(i, t)) == 0) continue;
        auto [g, x, y] = xgcd(D(t, t), D(i, t));
        BigInt u = -D(i, t) / g, v = D(t, t) / g;
        row_combine(t, i, x, y, u, v);
        changed = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(D(t, j)) == 0) continue;
        auto [g, x, y] = xgcd(D(t, t), D(t, j));
        BigInt u = -D(t, j) / g, v = D(t, t) / g;
        col_combine(t, j, x, y, u, v);
        changed = true;
      }
      if (changed) continue;
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n && !bad; ++j)
          if (D(i, j) % D(t, t) != 0) bad = i;
      if (!bad) break;
      row_combine(t, *bad, 1, 1, 0, 1);
    }
    if (sgn(D(t, t)) < 0) row_combine(t, t, -1, 0, 0, -1);  // r1 = r2 = t: negates row t
  }
  SmithForm out{U, D, V, t};
  return out;
}

IntMatrix hermite_normal_form_rows(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows(), n = h.cols();
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(h(i, k), h(j, k));
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // Euclid down the column until a single nonzero entry remains at `row`
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < m; ++i)
        if (sgn(h(i, col)) != 0 && (!best || detail::cmp_abs(h(i, col), h(*best, col)) < 0)) best = i;
      if (!best) break;
      swap_rows(row, *best);
      bool cleared = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (sgn(h(i, col)) == 0) continue;
        BigInt q = h(i, col) / h(row, col);
        for (std::size_t k = col; k < n; ++k) h(i, k) -= q * h(row, k);
        if (sgn(h(i, col)) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (sgn(h(row, col)) == 0) continue;
    if (sgn(h(row, col)) < 0)
      for (std::size_t k = col; k < n; ++k) h(row, k) = -h(row, k);
    for (std::size_t i = 0; i < row; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
      if (sgn(q) != 0)
        for (std::size_t k = col; k < n; ++k) h(i, k) -= q * h(row, k);
    }
    ++row;
  }
  return h.submatrix(0, 0, row, n);
}

}  // namespace cyclocert
