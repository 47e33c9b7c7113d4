#pragma once

#include <cstdint>
#include <vector>

#include "cyclocert/abelian.hpp"
#include "cyclocert/matrix.hpp"

namespace cyclocert::cohomology {

/// A finite abelian group G = <s_1, ..., s_g> acting on M = Z^r / column-span(relations),
/// s_i acting by actions[i].
struct GModule {
  std::vector<std::uint64_t> generator_orders;
  std::size_t rank = 0;
  IntMatrix relations;  // rank x k, k may be 0
  std::vector<IntMatrix> actions;

  /// Throws InvalidModule unless each action preserves the relation lattice, the actions commute
  /// modulo it and s_i^{order_i} acts as the identity on M.
  void validate() const;
  std::uint64_t group_order() const;
};

/// Enumeration bound on |G|: CYCLOCERT_MAX_GROUP if set, else 10^4.
std::uint64_t max_group_order();

/// Sum of the actions of all group elements, elements taken in lexicographic exponent order.
/// Throws GroupTooLarge above max_group_order().
IntMatrix norm_map(const GModule& m);

/// ker(N) / IM. Throws InfiniteResult if the quotient has positive rank.
abelian::FinAbGroup tate_h_minus1(const GModule& m);
/// M^G / NM. Throws InfiniteResult if the quotient has positive rank.
abelian::FinAbGroup tate_h0(const GModule& m);

/// Z[G] with G = prod Z/o_i acting by translation.
GModule regular_module(const std::vector<std::uint64_t>& generator_orders);
/// Componentwise action on M1 + M2; both must share the generator orders.
GModule direct_sum(const GModule& a, const GModule& b);

inline constexpr std::uint64_t kBarOracleBound = 16;

/// H_2(G, Z) from the inhomogeneous bar complex. Throws GroupTooLarge when |G| > bound.
abelian::FinAbGroup h2_bar_oracle(const abelian::FinAbGroup& g, std::uint64_t bound = kBarOracleBound);

/// H_2(G, Z) = G ^ G for abelian G.
abelian::FinAbGroup schur_multiplier(const abelian::FinAbGroup& g);

/// Minimal number of generators of the Schur multiplier of a decomposition group.
std::size_t local_schur_rank(const abelian::FinAbGroup& g_w);

}  // namespace cyclocert::cohomology
