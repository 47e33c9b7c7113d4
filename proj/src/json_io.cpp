#include "cyclocert/json_io.hpp"

#include <sstream>

#include "cyclocert/errors.hpp"

namespace cyclocert::json_io {

namespace {

json big_to_json(const BigInt& x) {
  if (fits_i64(x)) return to_i64(x);
  return x.get_str();
}

BigInt big_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? big(j.get<std::uint64_t>()) : big_signed(j.get<std::int64_t>());
  if (j.is_string()) {
    BigInt x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw ParseError(std::string(what) + ": expected an integer");
}

std::uint64_t u64_from_json(const json& j, const char* what) {
  const BigInt x = big_from_json(j, what);
  if (sgn(x) < 0 || !fits_u64(x)) throw ParseError(std::string(what) + ": expected a non-negative 64-bit integer");
  return to_u64(x);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(big_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// rows x cols from an array of rows; an empty array gives rows x 0.
IntMatrix matrix_from_json(const json& j, std::size_t rows, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
  if (j.empty()) return IntMatrix(rows, 0);
  if (j.size() != rows) throw ParseError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError(std::string(what) + ": ragged rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = big_from_json(j[i][k], what);
  }
  return m;
}

}  // namespace

json group_to_json(const abelian::FinAbGroup& g) {
  json out = json::array();
  for (const auto& d : g.invariant_factors()) out.push_back(big_to_json(d));
  return out;
}

abelian::FinAbGroup group_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("group: expected an array of cyclic orders");
  std::vector<BigInt> orders;
  for (const auto& x : j) {
    BigInt d = big_from_json(x, "group");
    if (sgn(d) <= 0) throw ParseError("group: cyclic orders must be positive");
    orders.push_back(std::move(d));
  }
  return abelian::FinAbGroup::from_cyclic_orders(orders);
}

std::vector<BigInt> parse_group_spec(const std::string& spec) {
  std::vector<BigInt> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(" \t"), e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("group spec '" + spec + "' has an empty entry");
    token = token.substr(b, e - b + 1);
    BigInt d;
    if (token.find_first_not_of("0123456789") != std::string::npos || d.set_str(token, 10) != 0 || sgn(d) <= 0)
      throw ParseError("group spec '" + spec + "': '" + token + "' is not a positive integer");
    out.push_back(std::move(d));
  }
  return out;
}

std::string ambient_name(characters::Ambient a) { return a == characters::Ambient::Plus ? "plus" : "full"; }

characters::Ambient parse_ambient(const std::string& s) {
  if (s == "plus") return characters::Ambient::Plus;
  if (s == "full") return characters::Ambient::Full;
  throw ParseError("ambient must be 'full' or 'plus', got '" + s + "'");
}

json certificate_to_json(const constructor::ConductorCertificate& c) {
  return {
      {"target", group_to_json(c.target)},
      {"M", c.M},
      {"ambient", ambient_name(c.ambient)},
      {"t", c.t},
      {"primes", c.primes},
      {"f", c.f.get_str()},
      {"congruence", c.congruence},
      {"T", c.T},
      {"ledger", {{"n_bound", c.ledger.n_bound}, {"r", c.ledger.r}, {"subtracted", c.ledger.subtracted}}},
      {"guaranteed", group_to_json(c.guaranteed)},
      {"embeds", c.embeds},
  };
}

constructor::ConductorCertificate certificate_from_json(const json& j) {
  try {
    constructor::ConductorCertificate c;
    c.target = group_from_json(field(j, "target"));
    c.M = u64_from_json(field(j, "M"), "M");
    c.ambient = parse_ambient(field(j, "ambient").get<std::string>());
    c.t = u64_from_json(field(j, "t"), "t");
    const auto& primes = field(j, "primes");
    if (!primes.is_array()) throw ParseError("primes: expected an array");
    for (const auto& p : primes) c.primes.push_back(u64_from_json(p, "primes"));
    const auto& f = field(j, "f");
    if (!f.is_string() || c.f.set_str(f.get<std::string>(), 10) != 0) throw ParseError("f: expected a decimal string");
    c.congruence = u64_from_json(field(j, "congruence"), "congruence");
    c.T = u64_from_json(field(j, "T"), "T");
    const auto& ledger = field(j, "ledger");
    c.ledger.n_bound = u64_from_json(field(ledger, "n_bound"), "ledger.n_bound");
    const auto& r = field(ledger, "r");
    if (!r.is_array()) throw ParseError("ledger.r: expected an array");
    for (const auto& v : r) c.ledger.r.push_back(u64_from_json(v, "ledger.r"));
    c.ledger.subtracted = u64_from_json(field(ledger, "subtracted"), "ledger.subtracted");
    if (c.t > 0) c.ledger.schur_subgroup = abelian::exterior_square(abelian::FinAbGroup::homocyclic(big(c.M), c.t));
    c.guaranteed = group_from_json(field(j, "guaranteed"));
    const auto& embeds = field(j, "embeds");
    if (!embeds.is_boolean()) throw ParseError("embeds: expected a boolean");
    c.embeds = embeds.get<bool>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

json class_group_to_json(const quadratic::ClassGroupResult& r) {
  return {
      {"D", r.D},
      {"h_narrow", r.h_narrow},
      {"h_wide", r.h_wide},
      {"structure_narrow", group_to_json(r.structure_narrow)},
      {"structure_wide", group_to_json(r.structure_wide)},
      {"unit_norm", r.unit_norm},
  };
}

json gmodule_to_json(const cohomology::GModule& m) {
  json actions = json::array();
  for (const auto& a : m.actions) actions.push_back(matrix_to_json(a));
  return {
      {"generator_orders", m.generator_orders},
      {"module_rank", m.rank},
      {"relations", m.relations.cols() == 0 ? json::array() : matrix_to_json(m.relations)},
      {"actions", actions},
  };
}

cohomology::GModule gmodule_from_json(const json& j) {
  try {
    cohomology::GModule m;
    const auto& orders = field(j, "generator_orders");
    if (!orders.is_array()) throw ParseError("generator_orders: expected an array");
    for (const auto& o : orders) m.generator_orders.push_back(u64_from_json(o, "generator_orders"));
    m.rank = u64_from_json(field(j, "module_rank"), "module_rank");
    m.relations = j.contains("relations") ? matrix_from_json(j.at("relations"), m.rank, "relations") : IntMatrix(m.rank, 0);
    const auto& actions = field(j, "actions");
    if (!actions.is_array()) throw ParseError("actions: expected an array of matrices");
    for (const auto& a : actions) {
      IntMatrix mat = matrix_from_json(a, m.rank, "actions");
      if (mat.cols() != m.rank) throw ParseError("actions: matrices must be module_rank square");
      m.actions.push_back(std::move(mat));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("module: ") + e.what());
  }
}

}  // namespace cyclocert::json_io
