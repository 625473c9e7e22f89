#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "affdes/bigmath.hpp"
#include "affdes/common.hpp"
#include "affdes/permgroup.hpp"

using namespace affdes;
using namespace affdes::pg;

namespace {

// Brute-force closure of the generated group; the order oracle for
// everything small enough to enumerate.
std::set<std::vector<std::uint32_t>> closure(
    const std::vector<Permutation>& gens, std::uint32_t degree) {
  std::set<std::vector<std::uint32_t>> seen{
      Permutation::identity(degree).images()};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty()) {
    Permutation cur = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Permutation next = compose(g, cur);
      if (seen.insert(next.images()).second) frontier.push_back(next);
    }
  }
  return seen;
}

Permutation cycle(const std::string& text, std::uint32_t degree) {
  return parse_permutation(text, degree);
}

}  // namespace

TEST_CASE("permutation validation and basics") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), UsageError);
  CHECK_THROWS_AS(Permutation({0, 3}), UsageError);
  Permutation g({1, 2, 0});
  CHECK(g.inverse().images() == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(compose(g, g.inverse()).is_identity());
  CHECK(Permutation::identity(5).is_identity());
}

TEST_CASE("compose follows the left-action convention") {
  Permutation g({1, 0, 2});   // swap 0,1
  Permutation h({0, 2, 1});   // swap 1,2
  Permutation gh = compose(g, h);
  for (std::uint32_t x = 0; x < 3; ++x) CHECK(gh(x) == g(h(x)));
  // g(h(2)) = g(1) = 0, while h(g(2)) = h(2) = 1 — the order matters.
  CHECK(gh(2) == 0);
  CHECK(compose(h, g)(2) == 1);
}

TEST_CASE("cycle notation and image lists parse to the same permutation") {
  CHECK(cycle("(0 1)(2 3)", 4) == parse_permutation("1 0 3 2", 4));
  CHECK(cycle("(0 1 2)", 4) == parse_permutation("1 2 0 3", 4));
  CHECK(cycle("()", 4).is_identity());
  CHECK_THROWS_AS(cycle("(0 1", 4), UsageError);
  CHECK_THROWS_AS(cycle("(0 1)(1 2)", 4), UsageError);
  CHECK_THROWS_AS(parse_permutation("0 1 2", 4), UsageError);
  CHECK_THROWS_AS(parse_permutation("0 1 2 4", 4), UsageError);
  // format_cycles round-trips through the parser.
  Permutation g({3, 2, 1, 0, 4});
  CHECK(parse_permutation(format_cycles(g), 5) == g);
  CHECK(format_cycles(Permutation::identity(3)) == "()");
}

TEST_CASE("orders of named groups match the textbook values") {
  // S_4 from a transposition and a 4-cycle.
  FiniteGroup s4(4, {cycle("(0 1)", 4), cycle("(0 1 2 3)", 4)});
  CHECK(s4.order() == 24);
  // A_4 from two 3-cycles.
  FiniteGroup a4(4, {cycle("(0 1 2)", 4), cycle("(1 2 3)", 4)});
  CHECK(a4.order() == 12);
  // Dihedral group of the square.
  FiniteGroup d4(4, {cycle("(0 1 2 3)", 4), cycle("(0 2)", 4)});
  CHECK(d4.order() == 8);
  // Cyclic group of order 6 on 6 points.
  FiniteGroup c6(6, {cycle("(0 1 2 3 4 5)", 6)});
  CHECK(c6.order() == 6);
  // Trivial group.
  FiniteGroup triv(5, {});
  CHECK(triv.order() == 1);
  FiniteGroup triv2(5, {Permutation::identity(5)});
  CHECK(triv2.order() == 1);
}

TEST_CASE("order and membership agree with brute-force closure") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint32_t degree = 5 + static_cast<std::uint32_t>(rng() % 3);
    std::vector<Permutation> gens;
    for (int i = 0; i < 2; ++i) {
      std::vector<std::uint32_t> images(degree);
      for (std::uint32_t x = 0; x < degree; ++x) images[x] = x;
      std::shuffle(images.begin(), images.end(), rng);
      gens.emplace_back(std::move(images));
    }
    auto elements = closure(gens, degree);
    FiniteGroup group(degree, gens);
    CHECK(group.order() == Int(elements.size()));
    // Membership: every closure element is contained; a random permutation
    // is contained exactly when the closure has it.
    int checked = 0;
    for (const auto& images : elements) {
      CHECK(group.contains(Permutation(images)));
      if (++checked == 10) break;
    }
    for (int i = 0; i < 5; ++i) {
      std::vector<std::uint32_t> images(degree);
      for (std::uint32_t x = 0; x < degree; ++x) images[x] = x;
      std::shuffle(images.begin(), images.end(), rng);
      CHECK(group.contains(Permutation(images)) ==
            (elements.count(images) > 0));
    }
  }
}

TEST_CASE("orbit-stabilizer identity on point sets") {
  FiniteGroup s5(5, {cycle("(0 1)", 5), cycle("(0 1 2 3 4)", 5)});
  REQUIRE(s5.order() == 120);
  for (std::vector<std::uint32_t> s :
       {std::vector<std::uint32_t>{0}, {0, 1}, {0, 1, 2}, {1, 3}}) {
    auto orbit = s5.orbit_of_set(s);
    CHECK(Int(orbit.size()) * s5.stabilizer_order_of_set(s) == s5.order());
    // Canonical form: each member sorted, list lexicographically sorted.
    CHECK(std::is_sorted(orbit.begin(), orbit.end()));
    for (const auto& member : orbit)
      CHECK(std::is_sorted(member.begin(), member.end()));
  }
  // S_5 is k-homogeneous for every k, so set orbits are complete.
  CHECK(Int(s5.orbit_of_set({0, 1}).size()) == binomial(5, 2));
  CHECK(s5.orbit(3) == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("affine family orders match the classical formulas") {
  // |AGL(d,p)| = p^d |GL(d,p)|.
  FiniteGroup agl32 = build_family({FamilyTag::AGL, 3, 2, 1});
  CHECK(agl32.order() == 1344);  // 8 * 168
  CHECK(agl32.order() == Int(8) * gl_order(3, 2));

  FiniteGroup agl42 = build_family({FamilyTag::AGL, 4, 2, 1});
  CHECK(agl42.order() == 322560);  // 16 * 20160
  CHECK(agl42.order() == Int(16) * gl_order(4, 2));

  FiniteGroup agl23 = build_family({FamilyTag::AGL, 2, 3, 1});
  CHECK(agl23.order() == Int(9) * gl_order(2, 3));  // 9 * 48 = 432

  FiniteGroup asl23 = build_family({FamilyTag::ASL, 2, 3, 1});
  CHECK(asl23.order() == Int(9) * sl_order(2, 3));  // 9 * 24 = 216

  // AGL(1,4) over the extension field: v (v-1) q-structure, a = 2.
  FiniteGroup agl14 = build_family({FamilyTag::AGL, 2, 2, 2});
  CHECK(agl14.order() == Int(4) * 3);  // AGL(1,4), no Frobenius included

  FiniteGroup agammal8 = build_family({FamilyTag::AGammaL1, 3, 2, 1});
  CHECK(agammal8.order() == Int(8) * 7 * 3);  // 168

  FiniteGroup asp42 = build_family({FamilyTag::ASp, 4, 2, 1});
  CHECK(asp42.order() == Int(16) * sp_order(4, 2));
  CHECK(sp_order(4, 2) == 720);
  CHECK(sp_order(2, 3) == sl_order(2, 3));  // Sp(2,q) = SL(2,q)
}

TEST_CASE("transitivity degrees of the affine groups") {
  FiniteGroup agl32 = build_family({FamilyTag::AGL, 3, 2, 1});
  CHECK(agl32.is_t_transitive(1));
  CHECK(agl32.is_t_transitive(2));
  CHECK(agl32.is_t_transitive(3));  // sharply so over GF(2)
  CHECK(Int(1344) == falling_factorial(8, 3) * 4);
  CHECK_FALSE(agl32.is_t_transitive(4));

  FiniteGroup agl23 = build_family({FamilyTag::AGL, 2, 3, 1});
  CHECK(agl23.is_t_transitive(2));
  CHECK_FALSE(agl23.is_t_transitive(3));  // collinearity is preserved

  CHECK(agl23.is_t_homogeneous(2));
}

TEST_CASE("the order-21 one-dimensional group splits ordered pairs") {
  // x -> x + 1 and x -> 2x on GF(7); 2 has multiplicative order 3,
  // so the group has order 21.
  std::vector<std::uint32_t> add1(7), mul2(7);
  for (std::uint32_t x = 0; x < 7; ++x) {
    add1[x] = (x + 1) % 7;
    mul2[x] = (2 * x) % 7;
  }
  FiniteGroup frob21(7, {Permutation(add1), Permutation(mul2)});
  CHECK(frob21.order() == 21);
  CHECK(frob21.is_t_homogeneous(2));
  CHECK_FALSE(frob21.is_t_transitive(2));
  // Directly: 42 ordered pairs split into two orbits of 21.
  CHECK(frob21.orbit_of_set({0, 1}).size() == 21);
}

TEST_CASE("group order divides its family order bound") {
  for (GroupFamily fam : {GroupFamily{FamilyTag::AGL, 3, 2, 1},
                          GroupFamily{FamilyTag::AGL, 2, 3, 1},
                          GroupFamily{FamilyTag::ASL, 2, 3, 1},
                          GroupFamily{FamilyTag::AGammaL1, 4, 2, 1},
                          GroupFamily{FamilyTag::ASp, 4, 2, 1},
                          GroupFamily{FamilyTag::AGL, 2, 2, 2}}) {
    FiniteGroup group = build_family(fam);
    CHECK(family_order_bound(fam) % group.order() == 0);
  }
}

TEST_CASE("arithmetic-only families refuse generator construction") {
  CHECK_THROWS_AS(build_family({FamilyTag::AG2, 6, 2, 1}), ConfigError);
  CHECK_THROWS_AS(build_family({FamilyTag::Case5, 4, 2, 1}), ConfigError);
  CHECK_THROWS_AS(build_family({FamilyTag::Case8, 6, 3, 1}), ConfigError);
  // But their order bounds are available.
  CHECK(family_order_bound({FamilyTag::Case8, 6, 3, 1}) == Int(729) * 2184);
  CHECK(family_order_bound({FamilyTag::Case5, 4, 2, 1}) == Int(16) * 5040);
  CHECK(family_order_bound({FamilyTag::AG2, 6, 2, 1}) == Int(64) * 12096);
}

TEST_CASE("family validation rejects inconsistent parameters") {
  CHECK_THROWS_AS(build_family({FamilyTag::AGL, 3, 4, 1}), ConfigError);
  CHECK_THROWS_AS(build_family({FamilyTag::AGL, 3, 2, 2}), ConfigError);
  CHECK_THROWS_AS(build_family({FamilyTag::ASp, 3, 2, 1}), ConfigError);
  CHECK_THROWS_AS(family_order_bound({FamilyTag::Case6, 2, 13, 1}),
                  ConfigError);
  CHECK_NOTHROW(family_order_bound({FamilyTag::Case6, 2, 11, 1}));
  CHECK_NOTHROW(family_order_bound({FamilyTag::Case6, 4, 3, 1}));
}

TEST_CASE("group files round-trip through read/write") {
  FiniteGroup agl32 = build_family({FamilyTag::AGL, 3, 2, 1});
  std::stringstream buffer;
  write_group(buffer, agl32);
  FiniteGroup back = read_group(buffer);
  CHECK(back.degree() == agl32.degree());
  CHECK(back.order() == agl32.order());
  for (const auto& g : agl32.generators()) CHECK(back.contains(g));

  std::istringstream cycles(
      "# comment line\ndegree 4\n(0 1)(2 3)\n0 1 3 2\n");
  FiniteGroup parsed = read_group(cycles);
  CHECK(parsed.order() == 4);

  std::istringstream missing("(0 1)\n");
  CHECK_THROWS_AS(read_group(missing), ParseError);
  std::istringstream bad("degree 4\n(0 9)\n");
  CHECK_THROWS_AS(read_group(bad), ParseError);
}
