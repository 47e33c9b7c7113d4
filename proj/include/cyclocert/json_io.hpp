#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cyclocert/abelian.hpp"
#include "cyclocert/cohomology.hpp"
#include "cyclocert/constructor.hpp"
#include "cyclocert/quadratic.hpp"

namespace cyclocert::json_io {

using json = nlohmann::json;

/// Invariant factors as a JSON array of integers.
json group_to_json(const abelian::FinAbGroup& g);
/// Accepts any array of positive cyclic orders and normalizes. Throws ParseError.
abelian::FinAbGroup group_from_json(const json& j);

/// Parses "d1,d2,..." into cyclic orders; "" and "1" give the trivial group. Throws ParseError.
std::vector<BigInt> parse_group_spec(const std::string& spec);

std::string ambient_name(characters::Ambient a);
/// Throws ParseError on anything but "full" or "plus".
characters::Ambient parse_ambient(const std::string& s);

json certificate_to_json(const constructor::ConductorCertificate& c);
/// The Schur subgroup is rebuilt from M and t since the file does not carry it. Throws ParseError.
constructor::ConductorCertificate certificate_from_json(const json& j);

json class_group_to_json(const quadratic::ClassGroupResult& r);

json gmodule_to_json(const cohomology::GModule& m);
/// {generator_orders[], module_rank, relations[][], actions[][][]}, relations may be empty. Throws ParseError.
cohomology::GModule gmodule_from_json(const json& j);

}  // namespace cyclocert::json_io
