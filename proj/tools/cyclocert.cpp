#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cyclocert/characters.hpp"
#include "cyclocert/cohomology.hpp"
#include "cyclocert/constructor.hpp"
#include "cyclocert/errors.hpp"
#include "cyclocert/json_io.hpp"
#include "cyclocert/quadratic.hpp"

using namespace cyclocert;
using json_io::json;

namespace {

enum Exit { kOk = 0, kVerificationFailed = 1, kInputError = 2, kResourceBound = 3 };

/// What a subcommand hands back: JSON payload, human-readable text and warnings.
struct Outcome {
  int code = kOk;
  json payload = json::object();
  std::string text;
  std::vector<std::string> diagnostics;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

abelian::FinAbGroup parse_group(const std::string& spec, std::vector<std::string>& diagnostics) {
  const auto orders = json_io::parse_group_spec(spec);
  const auto g = abelian::FinAbGroup::from_cyclic_orders(orders);
  std::vector<BigInt> nontrivial;
  for (const auto& d : orders)
    if (d != 1) nontrivial.push_back(d);
  if (nontrivial != g.invariant_factors())
    diagnostics.push_back("group spec '" + spec + "' normalized to " + abelian::to_string(g));
  return g;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string certificate_text(const constructor::ConductorCertificate& c) {
  std::ostringstream os;
  std::vector<std::string> primes, ranks;
  for (auto p : c.primes) primes.push_back(std::to_string(p));
  for (auto r : c.ledger.r) ranks.push_back(std::to_string(r));
  os << "target      " << abelian::to_string(c.target) << "\n"
     << "ambient     " << json_io::ambient_name(c.ambient) << "\n"
     << "M           " << c.M << "\n"
     << "t           " << c.t << "\n"
     << "primes      " << join(primes, " ") << " (1 mod " << c.congruence << ")\n"
     << "f           " << c.f.get_str() << "\n"
     << "local ranks " << join(ranks, " ") << ", subtracted " << c.ledger.subtracted << "\n"
     << "T           " << c.T << "\n"
     << "guaranteed  " << abelian::to_string(c.guaranteed) << "\n"
     << "embeds      " << (c.embeds ? "yes" : "no") << "\n";
  return os.str();
}

struct ConstructArgs {
  std::string group;
  std::string ambient = "plus";
  std::vector<std::uint64_t> avoid;
  std::string strategy = "smallest";
  std::uint64_t seed = 0;
  std::string out;
};

Outcome cmd_construct(const ConstructArgs& a) {
  Outcome o;
  const auto g = parse_group(a.group, o.diagnostics);
  constructor::ConstructOptions opts;
  opts.ambient = json_io::parse_ambient(a.ambient);
  opts.avoid.insert(a.avoid.begin(), a.avoid.end());
  if (a.strategy == "random")
    opts.strategy = arith::PrimeSearchStrategy::random(a.seed);
  else if (a.strategy != "smallest")
    throw ParseError("strategy must be 'smallest' or 'random'");
  const auto c = constructor::construct(g, opts);
  o.payload = json_io::certificate_to_json(c);
  o.text = certificate_text(c);
  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw ParseError("cannot write " + a.out);
    file << o.payload.dump(2) << "\n";
  }
  return o;
}

Outcome cmd_verify(const std::string& path) {
  Outcome o;
  json j = read_json_file(path);
  // accept either a bare certificate or a command envelope around one
  if (j.is_object() && j.contains("payload") && j.contains("status")) j = j.at("payload");
  const auto c = json_io::certificate_from_json(j);
  const auto v = constructor::verify_certificate(c);
  o.payload = {{"ok", v.ok}, {"reason", v.reason}, {"detail", v.detail}};
  if (v.ok) {
    o.text = "certificate verified: f = " + c.f.get_str() + " carries (Z/" + std::to_string(c.M) + ")^" +
             std::to_string(c.T) + "\n";
  } else {
    o.code = kVerificationFailed;
    o.text = "verification failed: " + v.reason + "\n";
    o.diagnostics.push_back(v.reason + ": " + v.detail);
  }
  return o;
}

Outcome cmd_quad(std::int64_t disc, std::int64_t sqrt_of) {
  Outcome o;
  if ((disc == 0) == (sqrt_of == 0)) throw ParseError("give exactly one of --disc and --sqrt");
  const std::int64_t d = sqrt_of != 0 ? quadratic::fundamental_discriminant(sqrt_of) : disc;
  const auto r = quadratic::class_group(d);
  o.payload = json_io::class_group_to_json(r);
  std::ostringstream os;
  os << "D          " << r.D << "\n"
     << "h_wide     " << r.h_wide << " " << abelian::to_string(r.structure_wide) << "\n"
     << "h_narrow   " << r.h_narrow << " " << abelian::to_string(r.structure_narrow) << "\n"
     << "unit norm  " << (r.unit_norm > 0 ? "+1" : "-1") << "\n"
     << "regulator  " << r.regulator << "\n";
  o.text = os.str();
  return o;
}

struct GenusArgs {
  std::vector<std::string> chars;
  std::int64_t quadratic = 0;
  std::uint64_t conductor = 0;
  std::vector<std::string> index;
  std::uint64_t m = 1;
};

characters::CharacterGroup genus_input(const GenusArgs& a) {
  const int sources = (!a.chars.empty()) + (a.quadratic != 0) + (a.conductor != 0);
  if (sources != 1) throw ParseError("give exactly one of --chars, --quadratic and --conductor");
  if (!a.index.empty() && a.conductor == 0) throw ParseError("--index needs --conductor");
  if (a.quadratic != 0) {
    const auto chi = characters::quadratic_character(a.quadratic);
    return characters::group_generated({chi}, chi.modulus());
  }
  if (a.conductor != 0) {
    const auto n = characters::normalize_modulus(a.conductor);
    if (a.index.empty()) return characters::CharacterGroup::full_dual(n);
    std::vector<characters::DirichletCharacter> gens;
    for (const auto& spec : a.index) {
      std::vector<std::uint64_t> exps;
      for (const auto& e : json_io::parse_group_spec(spec)) exps.push_back(to_u64(e));
      if (spec == "0") exps = {0};
      try {
        gens.push_back(characters::DirichletCharacter::from_exponents(n, exps));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
    return characters::group_generated(gens, n);
  }
  std::vector<characters::DirichletCharacter> chars;
  for (const auto& s : a.chars) chars.push_back(characters::DirichletCharacter::parse(s));
  try {
    return characters::group_generated(chars, chars.front().modulus());
  } catch (const ModulusMismatch& e) {
    throw ParseError(e.what());
  }
}

Outcome cmd_genus(const GenusArgs& a) {
  Outcome o;
  const auto x = genus_input(a);
  const auto m = characters::normalize_modulus(a.m);
  const auto genus = characters::genus_group(x);
  const auto inv = characters::field_invariants(x);
  const auto phi = arith::euler_phi(m);
  if (x.order() % phi != 0) throw PreconditionFailed("phi(m) does not divide #X");
  const auto d = x.order() / phi;
  const auto check = characters::exponent_check(x, m, d);

  json basis = json::array(), ram = json::array();
  for (const auto& chi : genus.basis()) basis.push_back(chi.to_string());
  std::ostringstream os;
  os << "X          order " << x.order() << " mod " << x.modulus() << ", conductor " << inv.conductor << "\n";
  for (auto [p, e] : arith::factor_small(x.modulus())) {
    (void)e;
    const auto idx = characters::ramification_index(x, p);
    ram.push_back({{"p", p}, {"e", idx}});
    os << "e_" << p << std::string(p < 10 ? 8 : p < 100 ? 7 : 6, ' ') << idx << "\n";
  }
  os << "genus      order " << genus.order() << " " << abelian::to_string(genus.structure()) << "\n"
     << "m          " << m << "\n"
     << "d          " << d << "\n"
     << "check      " << (check.ok ? "pass" : "FAIL") << "\n";
  if (check.witness) os << "witness    " << check.witness->to_string() << "\n";
  o.text = os.str();
  o.payload = {
      {"modulus", x.modulus()},
      {"order", x.order()},
      {"conductor", inv.conductor},
      {"ramification", ram},
      {"genus", {{"order", genus.order()}, {"structure", json_io::group_to_json(genus.structure())}, {"basis", basis}}},
      {"m", m},
      {"d", d},
      {"check", check.ok},
      {"witness", check.witness ? json(check.witness->to_string()) : json(nullptr)},
  };
  if (!check.ok) {
    o.code = kVerificationFailed;
    o.diagnostics.push_back("exponent check failed at " + check.witness->to_string());
  }
  return o;
}

Outcome cmd_schur(const std::string& spec) {
  Outcome o;
  const auto g = parse_group(spec, o.diagnostics);
  const auto s = cohomology::schur_multiplier(g);
  o.payload = {{"group", json_io::group_to_json(g)},
               {"schur", json_io::group_to_json(s)},
               {"rank", abelian::min_generators(s)}};
  o.text = "G          " + abelian::to_string(g) + "\nG ^ G      " + abelian::to_string(s) + "\n";
  return o;
}

Outcome cmd_cohom(const std::string& path) {
  Outcome o;
  const auto m = json_io::gmodule_from_json(read_json_file(path));
  const auto h1 = cohomology::tate_h_minus1(m);
  const auto h0 = cohomology::tate_h0(m);
  o.payload = {{"group_order", m.group_order()},
               {"h_minus1", json_io::group_to_json(h1)},
               {"h0", json_io::group_to_json(h0)}};
  o.text = "|G|        " + std::to_string(m.group_order()) + "\nH^-1       " + abelian::to_string(h1) +
           "\nH^0        " + abelian::to_string(h0) + "\n";
  return o;
}

Outcome cmd_search(std::uint64_t r, std::int64_t d_max) {
  Outcome o;
  if (r < 2) throw ParseError("--order must be at least 2");
  if (d_max > quadratic::kMaxClassGroupDisc)
    throw GroupTooLarge("--max above " + std::to_string(quadratic::kMaxClassGroupDisc));
  const auto found = quadratic::search_order_r(r, d_max);
  o.payload = {{"order", r}, {"max", d_max}, {"discriminants", found}};
  std::vector<std::string> parts;
  for (auto d : found) parts.push_back(std::to_string(d));
  o.text = std::to_string(found.size()) + " discriminants <= " + std::to_string(d_max) + " with an element of order " +
           std::to_string(r) + "\n" + join(parts, " ") + (parts.empty() ? "" : "\n");
  return o;
}

int emit(const Outcome& o, bool as_json, bool quiet) {
  if (as_json) {
    const json envelope = {
        {"status", o.code == kOk ? "ok" : "error"}, {"payload", o.payload}, {"diagnostics", o.diagnostics}};
    std::cout << envelope.dump(2) << "\n";
  } else if (!quiet) {
    std::cout << o.text;
  }
  for (const auto& d : o.diagnostics)
    if (!quiet || o.code != kOk) std::cerr << "cyclocert: " << d << "\n";
  return o.code;
}

int emit_error(int code, const std::string& kind, const std::string& message, bool as_json) {
  Outcome o;
  o.code = code;
  o.payload = {{"error", kind}, {"message", message}};
  o.diagnostics.push_back(kind + ": " + message);
  if (as_json) return emit(o, true, true);
  std::cerr << "cyclocert: " << kind << ": " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified class-group constructions for real cyclotomic fields"};
  app.require_subcommand(1);
  bool as_json = false, quiet = false;
  app.add_flag("--json", as_json, "Emit a JSON envelope {status, payload, diagnostics}");
  app.add_flag("--quiet", quiet, "Suppress human-readable output and warnings");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build a conductor certificate for a finite abelian group");
  construct->add_option("group", construct_args.group, "Cyclic orders, e.g. 2,4 (empty for the trivial group)")
      ->required();
  construct->add_option("--ambient", construct_args.ambient, "full or plus")->capture_default_str();
  construct->add_option("--avoid", construct_args.avoid, "Primes that must not divide f")->delimiter(',');
  construct->add_option("--strategy", construct_args.strategy, "smallest or random")->capture_default_str();
  construct->add_option("--seed", construct_args.seed, "Seed for --strategy random");
  construct->add_option("--out", construct_args.out, "Also write the certificate JSON to this file");

  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "Re-check a certificate from scratch");
  verify->add_option("--cert", cert_path, "Certificate JSON file")->required();

  std::int64_t disc = 0, sqrt_of = 0;
  auto* quad = app.add_subcommand("quad", "Class group of a real quadratic field");
  quad->add_option("--disc", disc, "Fundamental discriminant");
  quad->add_option("--sqrt", sqrt_of, "Squarefree m, field Q(sqrt m)");

  GenusArgs genus_args;
  auto* genus = app.add_subcommand("genus", "Genus group, ramification indices and the exponent check");
  genus->add_option("--chars", genus_args.chars, "Generating characters n:c1,c2/e1,e2");
  genus->add_option("--quadratic", genus_args.quadratic, "Use the character of Q(sqrt m)");
  genus->add_option("--conductor", genus_args.conductor, "Modulus n; alone it means the full dual");
  genus->add_option("--index", genus_args.index, "Generators as exponent lists e1,e2 on (Z/nZ)* pieces");
  genus->add_option("--m", genus_args.m, "Cyclotomic level m with dual(m) inside X")->capture_default_str();

  std::string schur_spec;
  auto* schur = app.add_subcommand("schur", "Schur multiplier G ^ G");
  schur->add_option("group", schur_spec, "Cyclic orders")->required();

  std::string module_path;
  auto* cohom = app.add_subcommand("cohom", "Tate cohomology in degrees -1 and 0");
  cohom->add_option("--module", module_path, "G-module JSON file")->required();

  std::uint64_t order = 0;
  std::int64_t d_max = 0;
  auto* search = app.add_subcommand("search", "Fundamental discriminants with an element of order r");
  search->add_option("--order", order, "r >= 2")->required();
  search->add_option("--max", d_max, "Largest discriminant")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    Outcome o;
    if (*construct) o = cmd_construct(construct_args);
    else if (*verify) o = cmd_verify(cert_path);
    else if (*quad) o = cmd_quad(disc, sqrt_of);
    else if (*genus) o = cmd_genus(genus_args);
    else if (*schur) o = cmd_schur(schur_spec);
    else if (*cohom) o = cmd_cohom(module_path);
    else if (*search) o = cmd_search(order, d_max);
    return emit(o, as_json, quiet);
  } catch (const GroupTooLarge& e) {
    return emit_error(kResourceBound, "resource", e.what(), as_json);
  } catch (const FactorizationTimeout& e) {
    return emit_error(kResourceBound, "resource", e.what(), as_json);
  } catch (const InconclusiveRounding& e) {
    return emit_error(kResourceBound, "resource", e.what(), as_json);
  } catch (const Error& e) {
    return emit_error(kInputError, "input", e.what(), as_json);
  } catch (const std::invalid_argument& e) {
    return emit_error(kInputError, "input", e.what(), as_json);
  } catch (const std::out_of_range& e) {
    return emit_error(kInputError, "input", e.what(), as_json);
  }
}
