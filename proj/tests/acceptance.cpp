// One PASS/FAIL line per acceptance criterion. argv[1] is the cyclocert CLI.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cyclocert/cohomology.hpp"
#include "cyclocert/constructor.hpp"
#include "cyclocert/quadratic.hpp"
#include "cyclocert/sweeps.hpp"
#include "module_gen.hpp"
#include "oracles.hpp"

using namespace cyclocert;
using json = nlohmann::json;

namespace {

std::string g_cli;

struct CliRun {
  int code = -1;
  json out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " --json 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string text;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  const int status = pclose(pipe);
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = json::parse(text, nullptr, false);
  return r;
}

std::string spec_of(const std::vector<long>& chain) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) s += (i ? "," : "") + std::to_string(chain[i]);
  return s;
}

/// (passed, detail)
using Check = std::function<std::pair<bool, std::string>()>;

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const Check& check) {
  const auto start = std::chrono::steady_clock::now();
  std::pair<bool, std::string> result;
  try {
    result = check();
  } catch (const std::exception& e) {
    result = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool ok = result.first && in_time;
  if (!ok) ++failures;
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << secs << " s, budget " << budget_s << " s)";
  if (!result.second.empty()) line << ": " << result.second;
  if (!in_time) line << ": over budget";
  std::cout << line.str() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to cyclocert CLI>\n";
    return 2;
  }
  g_cli = argv[1];

  criterion(1, "quad --sqrt 105 reports wide class number 2", 1.0, [] {
    const auto r = cli("quad --sqrt 105");
    const bool ok = r.code == 0 && r.out["payload"]["h_wide"] == 2;
    return std::pair{ok, "h_wide = " + r.out["payload"]["h_wide"].dump()};
  });

  criterion(2, "quad --sqrt 55 reports wide class number 2", 1.0, [] {
    const auto r = cli("quad --sqrt 55");
    const bool ok = r.code == 0 && r.out["payload"]["h_wide"] == 2;
    return std::pair{ok, "h_wide = " + r.out["payload"]["h_wide"].dump()};
  });

  criterion(3, "form cycles equal the analytic oracle for every fundamental D <= 2000", 120.0, [] {
    const auto rows = sweeps::class_number_sweep(2000);
    std::size_t bad = 0;
    std::string first;
    for (const auto& r : rows)
      if (r.h_cycles != r.h_analytic) {
        if (!bad++) first = " first D = " + std::to_string(r.D);
      }
    return std::pair{bad == 0, std::to_string(rows.size()) + " discriminants, " + std::to_string(bad) + " mismatches" + first};
  });

  criterion(4, "bar-complex H_2 equals the exterior square for every |G| <= 16", 300.0, [] {
    std::size_t n = 0, bad = 0;
    for (const auto& chain : oracle::all_abelian_types(16)) {
      const auto g = oracle::group_of(chain);
      ++n;
      if (cohomology::h2_bar_oracle(g) != cohomology::schur_multiplier(g)) ++bad;
    }
    return std::pair{bad == 0, std::to_string(n) + " isomorphism types, " + std::to_string(bad) + " mismatches"};
  });

  criterion(5, "exponent check over every subgroup of the dual mod n <= 150 and every admissible m", 600.0, [] {
    const auto s = sweeps::exponent_sweep(150);
    std::string detail = std::to_string(s.moduli) + " moduli, " + std::to_string(s.subgroups) + " subgroups, " +
                         std::to_string(s.checks) + " checks, " + std::to_string(s.counterexamples.size()) +
                         " counterexamples";
    if (!s.counterexamples.empty()) detail += " first " + s.counterexamples.front();
    return std::pair{s.counterexamples.empty(), detail};
  });

  criterion(6, "e_p of the full dual is phi(p^a) on 1000 sampled n <= 10^4", 60.0, [] {
    const auto s = sweeps::leopoldt_sweep(1000, 10'000, 2024);
    return std::pair{s.failures.empty(), std::to_string(s.moduli) + " moduli, " + std::to_string(s.primes) +
                                             " primes, " + std::to_string(s.failures.size()) + " failures"};
  });

  criterion(7, "local Schur ranks r_v <= 1 for 100 random f with 4 to 7 odd primes", 60.0, [] {
    const auto s = sweeps::local_rank_sweep(100, 2000, 77);
    return std::pair{s.max_rank <= 1 && s.conductors == 100,
                     std::to_string(s.primes) + " primes, max rank " + std::to_string(s.max_rank)};
  });

  criterion(8, "(t, T) table (4,1) (5,4) (6,8) (7,13)", 1.0, [] {
    const std::vector<std::pair<std::size_t, std::size_t>> table{{4, 1}, {5, 4}, {6, 8}, {7, 13}};
    bool ok = true;
    for (auto [t, T] : table) ok = ok && constructor::t_formula(t) == T && constructor::choose_t(T) == t;
    return std::pair{ok, std::string()};
  });

  criterion(9, "construct then verify round-trips through the CLI, both ambients, avoided primes absent", 60.0, [] {
    std::size_t groups = 0, runs = 0, bad = 0;
    std::string first;
    const char* tmp = std::getenv("TMPDIR");
    const std::string path = std::string(tmp ? tmp : "/tmp") + "/cyclocert_acceptance_cert.json";
    for (const auto& chain : oracle::all_abelian_types(8 * 8 * 8)) {
      if (chain.size() > 3 || (!chain.empty() && chain.back() > 8)) continue;
      ++groups;
      for (const char* ambient : {"plus", "full"}) {
        ++runs;
        const std::string spec = "'" + spec_of(chain) + "'";
        const auto c = cli("construct " + spec + " --ambient " + ambient + " --avoid 5,13 --out " + path);
        const auto v = cli("verify --cert " + path);
        const BigInt f(c.out["payload"]["f"].get<std::string>());
        const bool ok = c.code == 0 && v.code == 0 && v.out["payload"]["ok"] == true && f % 5 != 0 && f % 13 != 0;
        if (!ok && !bad++) first = " first " + spec + " " + ambient;
      }
    }
    std::remove(path.c_str());
    return std::pair{bad == 0, std::to_string(groups) + " groups, " + std::to_string(runs) + " round trips, " +
                                   std::to_string(bad) + " failures" + first};
  });

  criterion(10, "Herbrand quotient 1 on 500 random modules, regular modules trivial for |G| <= 8", 120.0, [] {
    std::mt19937_64 rng(10);
    std::size_t bad = 0;
    for (int i = 0; i < 500; ++i) {
      const auto m = testgen::random_cyclic_module(rng, 20, 20);
      if (cohomology::tate_h0(m).order() != cohomology::tate_h_minus1(m).order()) ++bad;
    }
    std::size_t regular = 0, nontrivial = 0;
    for (const auto& chain : oracle::all_abelian_types(8)) {
      std::vector<std::uint64_t> orders(chain.begin(), chain.end());
      const auto m = cohomology::regular_module(orders);
      ++regular;
      if (!cohomology::tate_h0(m).is_trivial() || !cohomology::tate_h_minus1(m).is_trivial()) ++nontrivial;
    }
    return std::pair{bad == 0 && nontrivial == 0, std::to_string(bad) + " Herbrand failures, " +
                                                      std::to_string(nontrivial) + " of " + std::to_string(regular) +
                                                      " regular modules nontrivial"};
  });

  criterion(11, "search --order 2 --max 250 contains 105 and 220, every hit re-verified", 30.0, [] {
    const auto r = cli("search --order 2 --max 250");
    if (r.code != 0) return std::pair{false, std::string("exit ") + std::to_string(r.code)};
    std::set<std::int64_t> found;
    std::size_t bad = 0;
    for (const auto& d : r.out["payload"]["discriminants"]) {
      found.insert(d.get<std::int64_t>());
      if (quadratic::class_group(d.get<std::int64_t>()).structure_wide.exponent() % 2 != 0) ++bad;
    }
    const bool ok = found.count(105) && found.count(220) && bad == 0;
    return std::pair{ok, std::to_string(found.size()) + " discriminants, " + std::to_string(bad) + " not re-verified"};
  });

  return failures == 0 ? 0 : 1;
}
