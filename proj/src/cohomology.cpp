#include "cyclocert/cohomology.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "cyclocert/errors.hpp"
#include "cyclocert/snf.hpp"

namespace cyclocert::cohomology {

namespace {

using abelian::FinAbGroup;

/// Membership in the column lattice of R via its Smith form.
class LatticeTest {
 public:
  explicit LatticeTest(const IntMatrix& r) : snf_(smith_normal_form(r)) {}

  bool contains(const std::vector<BigInt>& v) const {
    const auto z = snf_.U * v;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i < snf_.rank) {
        if (z[i] % snf_.D(i, i) != 0) return false;
      } else if (sgn(z[i]) != 0) {
        return false;
      }
    }
    return true;
  }
  bool contains_columns(const IntMatrix& m) const {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!contains(m.column(j))) return false;
    return true;
  }

 private:
  SmithForm snf_;
};

IntMatrix relation_matrix(const GModule& m) {
  return m.relations.cols() == 0 && m.relations.rows() == 0 ? IntMatrix(m.rank, 0) : m.relations;
}

IntMatrix negate(const IntMatrix& a) { return IntMatrix(a.rows(), a.cols()) - a; }

void check_group_size(const GModule& m) {
  BigInt order = 1;
  for (auto o : m.generator_orders) order *= big(o);
  if (order > big(max_group_order()))
    throw GroupTooLarge("|G| = " + order.get_str() + " exceeds the enumeration bound " +
                        std::to_string(max_group_order()));
}

/// Exponent tuples in lexicographic order, first generator most significant.
template <typename F>
void for_each_element(const std::vector<std::uint64_t>& orders, F&& f) {
  std::vector<std::uint64_t> e(orders.size(), 0);
  for (;;) {
    f(e);
    std::size_t i = orders.size();
    while (i-- > 0) {
      if (++e[i] < orders[i]) break;
      e[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

std::uint64_t max_group_order() {
  if (const char* env = std::getenv("CYCLOCERT_MAX_GROUP")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 10'000;
}

std::uint64_t GModule::group_order() const {
  std::uint64_t n = 1;
  for (auto o : generator_orders) n *= o;
  return n;
}

void GModule::validate() const {
  if (actions.size() != generator_orders.size())
    throw InvalidModule("need one action matrix per group generator");
  const IntMatrix r = relation_matrix(*this);
  if (r.rows() != rank) throw InvalidModule("relation matrix must have module_rank rows");
  for (auto o : generator_orders)
    if (o == 0) throw InvalidModule("generator orders must be positive");
  for (const auto& a : actions)
    if (a.rows() != rank || a.cols() != rank) throw InvalidModule("action matrices must be module_rank square");
  const LatticeTest lattice(r);
  const IntMatrix id = IntMatrix::identity(rank);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!lattice.contains_columns(actions[i] * r))
      throw InvalidModule("action " + std::to_string(i) + " does not preserve the relation lattice");
    IntMatrix power = id;
    for (std::uint64_t k = 0; k < generator_orders[i]; ++k) power = power * actions[i];
    if (!lattice.contains_columns(power - id))
      throw InvalidModule("generator " + std::to_string(i) + " does not act with its stated order");
    for (std::size_t j = i + 1; j < actions.size(); ++j)
      if (!lattice.contains_columns(actions[i] * actions[j] - actions[j] * actions[i]))
        throw InvalidModule("actions " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  }
}

IntMatrix norm_map(const GModule& m) {
  check_group_size(m);
  const std::size_t r = m.rank;
  // powers[i][k] = A_i^k
  std::vector<std::vector<IntMatrix>> powers(m.actions.size());
  for (std::size_t i = 0; i < m.actions.size(); ++i) {
    powers[i].push_back(IntMatrix::identity(r));
    for (std::uint64_t k = 1; k < m.generator_orders[i]; ++k) powers[i].push_back(powers[i].back() * m.actions[i]);
  }
  IntMatrix n(r, r);
  for_each_element(m.generator_orders, [&](const std::vector<std::uint64_t>& e) {
    IntMatrix g = IntMatrix::identity(r);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) g = g * powers[i][e[i]];
    n = n + g;
  });
  return n;
}

FinAbGroup tate_h_minus1(const GModule& m) {
  m.validate();
  const std::size_t r = m.rank;
  const IntMatrix rel = relation_matrix(m);
  const IntMatrix n = norm_map(m);
  // K = {x : N x in L} is the x-part of ker [N | -R]
  const IntMatrix ker = abelian::integer_kernel(n.hconcat(negate(rel)));
  const IntMatrix k_gens = ker.submatrix(0, 0, r, ker.cols());
  IntMatrix sub = rel;
  for (const auto& a : m.actions) sub = sub.hconcat(a - IntMatrix::identity(r));
  return abelian::lattice_quotient(k_gens, sub);
}

FinAbGroup tate_h0(const GModule& m) {
  m.validate();
  const std::size_t r = m.rank;
  const IntMatrix rel = relation_matrix(m);
  const std::size_t k = rel.cols();
  const std::size_t g = m.actions.size();
  const IntMatrix n = norm_map(m);
  IntMatrix fixed_gens = IntMatrix::identity(r);
  if (g > 0) {
    // (A_i - 1) x = R y_i for every i; unknowns (x, y_1, ..., y_g)
    IntMatrix big_m(r * g, r + k * g);
    for (std::size_t i = 0; i < g; ++i) {
      const IntMatrix d = m.actions[i] - IntMatrix::identity(r);
      for (std::size_t row = 0; row < r; ++row) {
        for (std::size_t col = 0; col < r; ++col) big_m(i * r + row, col) = d(row, col);
        for (std::size_t col = 0; col < k; ++col) big_m(i * r + row, r + i * k + col) = -rel(row, col);
      }
    }
    const IntMatrix ker = abelian::integer_kernel(big_m);
    fixed_gens = ker.submatrix(0, 0, r, ker.cols());
  }
  return abelian::lattice_quotient(fixed_gens, n.hconcat(rel));
}

GModule regular_module(const std::vector<std::uint64_t>& generator_orders) {
  GModule m;
  m.generator_orders = generator_orders;
  std::vector<std::vector<std::uint64_t>> elems;
  for_each_element(generator_orders, [&](const std::vector<std::uint64_t>& e) { elems.push_back(e); });
  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  m.rank = elems.size();
  m.relations = IntMatrix(m.rank, 0);
  for (std::size_t gen = 0; gen < generator_orders.size(); ++gen) {
    IntMatrix a(m.rank, m.rank);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto shifted = elems[i];
      shifted[gen] = (shifted[gen] + 1) % generator_orders[gen];
      a(index[shifted], i) = 1;
    }
    m.actions.push_back(std::move(a));
  }
  return m;
}

GModule direct_sum(const GModule& a, const GModule& b) {
  if (a.generator_orders != b.generator_orders) throw InvalidModule("direct sum needs the same group presentation");
  const IntMatrix ra = relation_matrix(a), rb = relation_matrix(b);
  GModule m;
  m.generator_orders = a.generator_orders;
  m.rank = a.rank + b.rank;
  m.relations = IntMatrix(m.rank, ra.cols() + rb.cols());
  for (std::size_t i = 0; i < a.rank; ++i)
    for (std::size_t j = 0; j < ra.cols(); ++j) m.relations(i, j) = ra(i, j);
  for (std::size_t i = 0; i < b.rank; ++i)
    for (std::size_t j = 0; j < rb.cols(); ++j) m.relations(a.rank + i, ra.cols() + j) = rb(i, j);
  for (std::size_t g = 0; g < a.actions.size(); ++g) {
    IntMatrix act(m.rank, m.rank);
    for (std::size_t i = 0; i < a.rank; ++i)
      for (std::size_t j = 0; j < a.rank; ++j) act(i, j) = a.actions[g](i, j);
    for (std::size_t i = 0; i < b.rank; ++i)
      for (std::size_t j = 0; j < b.rank; ++j) act(a.rank + i, a.rank + j) = b.actions[g](i, j);
    m.actions.push_back(std::move(act));
  }
  return m;
}

FinAbGroup h2_bar_oracle(const FinAbGroup& g, std::uint64_t bound) {
  if (g.order() > big(bound))
    throw GroupTooLarge("bar complex oracle limited to |G| <= " + std::to_string(bound));
  std::vector<std::uint64_t> orders;
  for (const auto& d : g.invariant_factors()) orders.push_back(to_u64(d));
  std::vector<std::vector<std::uint64_t>> elems;
  for_each_element(orders, [&](const std::vector<std::uint64_t>& e) { elems.push_back(e); });
  const std::size_t n = elems.size();
  std::map<std::vector<std::uint64_t>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<std::size_t> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto c = elems[a];
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = (c[i] + elems[b][i]) % orders[i];
      mul[a * n + b] = index[c];
    }

  // d2 [g|h] = [h] - [gh] + [g]
  IntMatrix d2(n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t col = a * n + b;
      d2(b, col) += 1;
      d2(mul[a * n + b], col) -= 1;
      d2(a, col) += 1;
    }

  // d3 [g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h]; duplicate and zero columns carry no information
  std::map<std::vector<long>, bool> seen;
  std::vector<std::vector<long>> columns;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<long> col(n * n, 0);
        col[b * n + c] += 1;
        col[mul[a * n + b] * n + c] -= 1;
        col[a * n + mul[b * n + c]] += 1;
        col[a * n + b] -= 1;
        if (std::all_of(col.begin(), col.end(), [](long v) { return v == 0; })) continue;
        // a column and its negative span the same line
        auto first = std::find_if(col.begin(), col.end(), [](long v) { return v != 0; });
        if (*first < 0)
          for (auto& v : col) v = -v;
        if (seen.emplace(col, true).second) columns.push_back(std::move(col));
      }
  IntMatrix d3(n * n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < n * n; ++i) d3(i, j) = columns[j][i];

  const auto divisors = elementary_divisors(d3);
  const std::size_t kernel_rank = n * n - matrix_rank(d2);
  if (divisors.size() != kernel_rank)
    throw Error("bar complex: im d3 has rank " + std::to_string(divisors.size()) + ", ker d2 has rank " +
                std::to_string(kernel_rank));
  // ker d2 is saturated of the same rank as im d3, so H_2 is the torsion of Z^{n^2} / im d3
  return FinAbGroup::from_cyclic_orders(divisors);
}

FinAbGroup schur_multiplier(const FinAbGroup& g) { return abelian::exterior_square(g); }

std::size_t local_schur_rank(const FinAbGroup& g_w) { return abelian::min_generators(schur_multiplier(g_w)); }

}  // namespace cyclocert::cohomology
