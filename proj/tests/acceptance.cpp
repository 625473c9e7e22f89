// Acceptance gate: nine end-to-end checks, one pass/fail line each.
// Exact integer arithmetic throughout; the only tolerances are the wall
// clock budgets stated inline (1 s, 60 s, 300 s). Criterion 6 drives the
// installed CLI binary, whose path arrives as argv[1].

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "affdes/bigmath.hpp"
#include "affdes/common.hpp"
#include "affdes/design.hpp"
#include "affdes/orbit_designs.hpp"
#include "affdes/permgroup.hpp"
#include "affdes/sieve.hpp"

using namespace affdes;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << detail << "\n";
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Independent coverage oracle by direct inclusion testing; shares no code
// with design_strength (no ranking, no per-block subset enumeration).
bool uniform_coverage(const std::vector<std::vector<std::uint32_t>>& blocks,
                      std::uint32_t v, unsigned s) {
  std::vector<std::uint32_t> pick(s);
  for (unsigned i = 0; i < s; ++i) pick[i] = i;
  std::int64_t expected = -1;
  while (true) {
    std::int64_t c = 0;
    for (const auto& block : blocks)
      if (std::includes(block.begin(), block.end(), pick.begin(), pick.end()))
        ++c;
    if (expected < 0) expected = c;
    if (c != expected) return false;
    unsigned i = s;
    while (i > 0 && pick[i - 1] == v - s + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (unsigned j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return true;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  std::ostringstream why;
  bool ok = true;

  pg::FiniteGroup agl32 = pg::build_family({pg::FamilyTag::AGL, 3, 2, 1});
  ok &= agl32.order() == 1344;
  why << "|AGL(3,2)|=" << agl32.order();

  auto orbits = od::enumerate_orbits(agl32, 4);
  std::size_t design_orbits = 0;
  for (auto& orbit : orbits) {
    od::design_strength(orbit, 3);
    if (!orbit.uniform_at(3) || orbit.strength[2].lambda != 1) continue;
    ++design_orbits;
    ok &= orbit.size == 14;
    dc::Design planes = orbit.as_design();
    ok &= dc::verify_design(planes, 3, 1).ok;
    ok &= dc::is_block_transitive(planes, agl32);
    ok &= dc::is_flag_transitive(planes, agl32);
    Int gb = agl32.stabilizer_order_of_set(planes.blocks.front());
    Int gx = agl32.stabilizer_order_of_set({0});
    ok &= gb == 96 && gx == 168;
    ok &= Int(14) * gb == 1344 && Int(8) * gx == 1344;
    why << ", 14-block 3-(8,4,1) verified, block+flag transitive, 14*" << gb
        << "=8*" << gx << "=1344";
  }
  ok &= design_orbits == 1;
  double elapsed = seconds_since(start);
  ok &= elapsed < 1.0;
  why << ", " << elapsed << "s (< 1 s)";
  report(1, ok, why.str());
}

void criterion_2() {
  auto start = std::chrono::steady_clock::now();
  std::ostringstream why;
  bool ok = true;

  pg::FiniteGroup agl42 = pg::build_family({pg::FamilyTag::AGL, 4, 2, 1});
  ok &= agl42.order() == 322560;
  why << "|AGL(4,2)|=" << agl42.order();

  auto scan = od::alltop_scan(agl42, 5, 8);
  ok &= scan.violations.empty();
  std::size_t four_designs = 0;
  for (const auto& row : scan.rows) {
    if (row.is_4_design) {
      ++four_designs;
      ok &= row.is_5_design;
    }
    // Independent oracle on every orbit: re-derive 4/5-design status by
    // direct inclusion counting and compare.
    pg::FiniteGroup group = agl42;
    auto orbit_blocks =
        group.orbit_of_set(std::vector<std::uint32_t>(row.representative));
    ok &= orbit_blocks.size() == row.orbit_size;
    ok &= uniform_coverage(orbit_blocks, 16, 4) == row.is_4_design;
    ok &= uniform_coverage(orbit_blocks, 16, 5) == row.is_5_design;
  }
  double elapsed = seconds_since(start);
  ok &= elapsed < 60.0;
  why << ", k=5..8: " << scan.rows.size() << " orbits, " << four_designs
      << " 4-design orbit(s), " << scan.violations.size()
      << " violations, oracle agreed on every orbit, " << elapsed
      << "s (< 60 s)";
  report(2, ok, why.str());
}

void criterion_3() {
  std::ostringstream why;
  bool ok = true;
  std::size_t searched = 0;

  pg::FiniteGroup agl32 = pg::build_family({pg::FamilyTag::AGL, 3, 2, 1});
  pg::FiniteGroup agl42 = pg::build_family({pg::FamilyTag::AGL, 4, 2, 1});
  for (unsigned t : {4u, 5u}) {
    // v = 8.
    std::uint64_t km8 = dc::k_max(t, 8);
    for (std::uint64_t k = t + 1; k <= std::min<std::uint64_t>(km8, 7); ++k) {
      ok &= od::steiner_orbit_search(agl32, t, static_cast<unsigned>(k)).empty();
      ++searched;
    }
    // v = 16.
    std::uint64_t km16 = dc::k_max(t, 16);
    for (std::uint64_t k = t + 1; k <= std::min<std::uint64_t>(km16, 15); ++k) {
      ok &= od::steiner_orbit_search(agl42, t, static_cast<unsigned>(k)).empty();
      ++searched;
    }
  }
  why << "no Steiner 4-/5-design orbit over AGL(3,2) or AGL(4,2) in any of "
      << searched << " admissible (t,k) cells";
  report(3, ok, why.str());
}

void criterion_4() {
  std::ostringstream why;
  bool ok = true;
  for (std::uint64_t k = 5; k <= 10; ++k)
    ok &= sv::admissible(dc::DesignParams::make(4, 64, k, 1)).eliminated();
  auto report8 = sv::admissible(dc::DesignParams::make(4, 64, 8, 1));
  const sv::RuleResult* witness = nullptr;
  for (const auto& r : report8.rules)
    if (r.rule == sv::Rule::LambdaIntegral && r.s == 0) witness = &r;
  ok &= witness && !witness->passes && witness->lhs == 635376 &&
        witness->rhs == 70;
  // The same verdict through the family machinery with the a=1 bound.
  sv::ScanOptions options;
  options.t = 4;
  auto verdicts = sv::family_scan({pg::FamilyTag::AG2, 6, 2, 1}, options);
  ok &= verdicts.size() == 1 && verdicts[0].eliminated &&
        verdicts[0].checked == 6;
  why << "v=64, t=4, k=5..10 all eliminated; k=8 witness b=635376/70 "
         "non-integral; family bound "
      << pg::family_order_bound({pg::FamilyTag::AG2, 6, 2, 1});
  report(4, ok, why.str());
}

void criterion_5() {
  std::ostringstream why;
  bool ok = true;
  auto l2 = [](std::uint64_t k) {
    return dc::DesignParams::make(4, 16, k, 1).lambda_s(2);
  };
  ok &= l2(5) == Rat(91, 3) && !is_integer(l2(5));
  ok &= l2(6) == Rat(91, 6) && !is_integer(l2(6));
  ok &= sv::admissible(dc::DesignParams::make(4, 16, 5, 1)).eliminated();
  ok &= sv::admissible(dc::DesignParams::make(4, 16, 6, 1)).eliminated();

  pg::FiniteGroup asp42 = pg::build_family({pg::FamilyTag::ASp, 4, 2, 1});
  Int sp_order_from_generators = asp42.order() / 16;  // strip translations
  ok &= sp_order_from_generators == 720;
  why << "lambda_2 = 91/3 and 91/6 non-integral, k=5 and 6 eliminated; "
         "|Sp(4,2)| from generators = "
      << sp_order_from_generators;
  report(5, ok, why.str());
}

void criterion_6(const char* cli_path) {
  auto start = std::chrono::steady_clock::now();
  std::ostringstream why;
  bool ok = true;

  std::string command = std::string(cli_path) +
                        " sieve --family AGammaL1 --t 5 --v-max 1000000"
                        " --format text --out acceptance_scan.txt";
  int status = std::system(command.c_str());
  int exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  ok &= exit_code == 0;

  // Cross-check in-process: every scanned prime power must be eliminated,
  // and the spot values of the inequality chain match the hand arithmetic.
  auto r243 = sv::agammal1_elimination(243);
  auto r128 = sv::agammal1_elimination(128);
  ok &= r243.eliminated && r128.eliminated;
  ok &= r128.rows.back().rhs == 15288 && r128.rows.back().lhs == 15750;

  sv::ScanOptions options;
  options.t = 5;
  options.v_max = 1000000;
  options.full_detail = false;
  options.threads = 4;
  auto verdicts = sv::family_scan({pg::FamilyTag::AGammaL1, 1, 2, 1}, options);
  std::size_t eliminated = 0;
  for (const auto& verdict : verdicts) eliminated += verdict.eliminated;
  ok &= eliminated == verdicts.size() && !verdicts.empty();

  double elapsed = seconds_since(start);
  ok &= elapsed < 300.0;
  why << "CLI exit code " << exit_code << "; " << verdicts.size()
      << " prime powers v <= 10^6, " << eliminated << " eliminated, "
      << elapsed << "s (< 300 s)";
  report(6, ok, why.str());
}

void criterion_7() {
  std::ostringstream why;
  bool ok = true;
  // Deterministic linear congruential stream: reproducible parameters.
  std::uint64_t state = 88172645463325252ULL;
  auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  int tested = 0;
  while (tested < 200) {
    unsigned t = 1 + next() % 6;
    std::uint64_t v = t + 1 + next() % 300;
    std::uint64_t k = t + next() % (v - t + 1);
    std::uint64_t lambda = 1 + next() % 50;
    auto params = dc::DesignParams::make(t, v, k, lambda);
    ++tested;
    for (const auto& check : dc::check_identities(params))
      ok &= check.holds && check.lhs == check.rhs;
  }
  const std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>>
      quintuples = {
          {3, 4, 8}, {3, 6, 22}, {3, 12, 112}, {4, 7, 23}, {5, 8, 24}};
  for (auto [t, k, v] : quintuples) {
    auto params = dc::DesignParams::make(t, v, k, 1);
    for (const auto& check : dc::check_identities(params)) ok &= check.holds;
    auto bounds = dc::cameron_bounds(params);
    ok &= bounds.b_holds && bounds.b_lhs == bounds.b_rhs && bounds.b_equality;
  }
  why << tested
      << " random parameter sets satisfy all three identities exactly; the "
         "five equality quintuples achieve v-t+1 = (k-t+2)(k-t+1)";
  report(7, ok, why.str());
}

void criterion_8() {
  std::ostringstream why;
  bool ok = true;

  // No sieve rule may eliminate parameters of designs that exist.
  auto lines_params = dc::DesignParams::make(2, 9, 3, 1);
  auto planes_params = dc::DesignParams::make(3, 8, 4, 1);
  ok &= !sv::admissible(lines_params).eliminated();
  ok &= !sv::admissible(planes_params).eliminated();
  ok &= !sv::order_divisibility(lines_params, {pg::FamilyTag::AGL, 2, 3, 1})
             .eliminated();
  ok &= !sv::order_divisibility(planes_params, {pg::FamilyTag::AGL, 3, 2, 1})
             .eliminated();

  // Build the designs as orbits and confirm the homogeneity consequences
  // of block-transitivity.
  pg::FiniteGroup agl23 = pg::build_family({pg::FamilyTag::AGL, 2, 3, 1});
  auto line_orbits = od::steiner_orbit_search(agl23, 2, 3);
  ok &= line_orbits.size() == 1 && line_orbits[0].size == 12;
  pg::FiniteGroup agl32 = pg::build_family({pg::FamilyTag::AGL, 3, 2, 1});
  auto plane_orbits = od::steiner_orbit_search(agl32, 3, 4);
  ok &= plane_orbits.size() == 1 && plane_orbits[0].size == 14;

  auto hom2 = dc::homogeneity_implication_check(line_orbits[0].as_design(),
                                                agl23, 2);
  ok &= hom2.block_degree == 1 && hom2.block_holds;
  auto hom3 = dc::homogeneity_implication_check(plane_orbits[0].as_design(),
                                                agl32, 3);
  ok &= hom3.block_degree == 1 && hom3.block_holds;
  ok &= hom3.flag_transitive && hom3.flag_degree == 2 && hom3.flag_holds;

  why << "2-(9,3,1) and 3-(8,4,1) pass every rule; floor(t/2)- and "
         "floor((t+1)/2)-homogeneity confirmed at t=2 and t=3";
  report(8, ok, why.str());
}

void criterion_9() {
  std::ostringstream why;
  bool ok = true;
  // <x -> x+1, x -> 2x> on GF(7): order 21.
  std::vector<std::uint32_t> add1(7), mul2(7);
  for (std::uint32_t x = 0; x < 7; ++x) {
    add1[x] = (x + 1) % 7;
    mul2[x] = (2 * x) % 7;
  }
  pg::FiniteGroup frob(7, {pg::Permutation(add1), pg::Permutation(mul2)});
  ok &= frob.order() == 21;

  // Brute-force orbit counts, independent of the library's BFS: ordered
  // pairs under generator closure.
  std::set<std::pair<std::uint32_t, std::uint32_t>> remaining;
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b)
      if (a != b) remaining.insert({a, b});
  int ordered_orbits = 0;
  while (!remaining.empty()) {
    ++ordered_orbits;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> frontier{
        *remaining.begin()};
    remaining.erase(remaining.begin());
    while (!frontier.empty()) {
      auto [a, b] = frontier.back();
      frontier.pop_back();
      for (const auto& g : frob.generators()) {
        std::pair<std::uint32_t, std::uint32_t> img{g(a), g(b)};
        if (remaining.erase(img)) frontier.push_back(img);
      }
    }
  }
  ok &= ordered_orbits == 2;
  std::size_t unordered_orbit = frob.orbit_of_set({0, 1}).size();
  ok &= unordered_orbit == 21;  // all C(7,2) = 21 pairs: one orbit
  ok &= frob.is_t_homogeneous(2) && !frob.is_t_transitive(2);
  why << "order-21 subgroup of AGL(1,7): ordered pairs split into "
      << ordered_orbits << " orbits, unordered pairs form 1 orbit of "
      << unordered_orbit << " — 2-homogeneous, not 2-transitive";
  report(9, ok, why.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli-binary>\n";
    return 2;
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6(argv[1]);
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << (g_failures == 0 ? "ACCEPTANCE: all 9 criteria passed\n"
                                : "ACCEPTANCE: FAILURES PRESENT\n");
  return g_failures == 0 ? 0 : 1;
}
