#ifndef AFFDES_SIEVE_HPP
#define AFFDES_SIEVE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "affdes/bigmath.hpp"
#include "affdes/common.hpp"
#include "affdes/design.hpp"
#include "affdes/permgroup.hpp"

namespace affdes::sv {

// Every rule is a necessary condition for a block-transitive design with
// the given parameters; "passes" means the condition is consistent with
// existence, a failing rule eliminates the cell.
enum class Rule {
  NonTrivial,
  LambdaIntegral,  // lambda C(v-s,t-s) = 0 mod C(k-s,t-s), per s
  CameronA,        // v >= (t+1)(k-t+1)
  CameronB,        // v-t+1 >= (k-t+2)(k-t+1), t > 2
  KMaxBound,       // k <= k_max(t, v), t in {4,5}
  BlockTransCap,   // t <= 7
  AGammaL1Inequality,  // (v-2)(v-3) <= k(k-1)(k-2) d
  OrderDivisibility,   // b integral and b | family order bound
};
std::string rule_name(Rule rule, int s = -1);

struct RuleResult {
  Rule rule;
  int s = -1;  // s index for LambdaIntegral, -1 otherwise
  Int lhs, rhs;
  bool passes = false;
};

struct EliminationReport {
  dc::DesignParams params;
  std::string family = "generic";
  std::vector<RuleResult> rules;

  bool eliminated() const;
  const RuleResult* first_failure() const;
  std::string verdict() const;  // "eliminated" | "survives"
};

// The generic admissibility rules, all evaluated in fixed order.
EliminationReport admissible(const dc::DesignParams& params);

// Lagrange order rule: b must be integral and divide the family's
// maximal group order (Lagrange covers every subgroup at once).
EliminationReport order_divisibility(const dc::DesignParams& params,
                                     const pg::GroupFamily& family);

// v = p^d; returns (p, d) or nothing when v is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(
    std::uint64_t v);

// The one-dimensional semilinear chain for Steiner 5-designs: for each
// k in [6, k_max(5, v)], is (v-2)(v-3) <= k(k-1)(k-2) d satisfiable?
// Eliminated iff no k satisfies it.
struct AGammaL1Report {
  std::uint64_t v = 0;
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  struct KRow {
    std::uint64_t k;
    Int lhs, rhs;
    bool satisfiable;
  };
  std::vector<KRow> rows;
  bool eliminated = false;
};
AGammaL1Report agammal1_elimination(std::uint64_t v);

struct ScanCell {
  std::uint64_t k = 0;
  // All rules in full-detail mode; only the first failing rule otherwise.
  std::vector<RuleResult> rules;
  bool eliminated = false;
};

struct ScanVerdict {
  pg::GroupFamily family;
  std::uint64_t v = 0;
  unsigned t = 0;
  // Full-detail scans keep every cell; summary scans keep only survivors
  // (an elimination witness is still a single rule lookup away).
  std::vector<ScanCell> cells;
  std::uint64_t checked = 0;  // number of k values examined
  std::vector<std::uint64_t> surviving_k;
  bool eliminated = false;  // vacuously true when no admissible k exists
  std::string verdict() const;  // "eliminated" | "arithmetic survivor"
};

struct ScanOptions {
  unsigned t = 5;
  // v range for AGammaL1 scans; families with fixed parameters ignore it.
  std::uint64_t v_min = 0;
  std::uint64_t v_max = 0;
  bool full_detail = true;
  unsigned threads = 1;
};

// Per-(family, v): every k in [t+1, min(k_max, v-1)] is run through the
// generic rules, the order rule, and (for AGammaL1, t=5) the inequality
// chain. A survivor is reported honestly, never dropped.
std::vector<ScanVerdict> family_scan(const pg::GroupFamily& family,
                                     const ScanOptions& options);

// Fixed instance lists for the finitely-many-v cases.
std::vector<pg::GroupFamily> case_instances(pg::FamilyTag tag);

nlohmann::json report_json(const EliminationReport& report);
nlohmann::json scan_json(const std::vector<ScanVerdict>& verdicts);
// Columns: family,v,k,rule,witness_lhs,witness_rhs,verdict (stable order).
void write_scan_csv(std::ostream& out,
                    const std::vector<ScanVerdict>& verdicts);

}  // namespace affdes::sv

#endif
