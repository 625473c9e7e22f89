#include "affdes/sieve.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

namespace affdes::sv {

namespace {

using u128 = unsigned __int128;

Int to_int(u128 x) {
  Int high = static_cast<std::uint64_t>(x >> 64);
  return (high << 64) + static_cast<std::uint64_t>(x);
}

// Exact for results below 2^128; enough for C(10^6, 7).
u128 binom128(std::uint64_t n, unsigned j) {
  if (j > n) return 0;
  u128 r = 1;
  for (unsigned i = 1; i <= j; ++i) r = r * (n - j + i) / i;
  return r;
}

void add_rule(std::vector<RuleResult>& out, Rule rule, int s, Int lhs, Int rhs,
              bool passes) {
  out.push_back({rule, s, std::move(lhs), std::move(rhs), passes});
}

// All rules, fixed order, all evaluated (reports double as transcripts).
std::vector<RuleResult> evaluate_rules(const dc::DesignParams& p,
                                       const Int* order_bound,
                                       const std::uint32_t* agammal1_d) {
  std::vector<RuleResult> rules;
  add_rule(rules, Rule::NonTrivial, -1, Int(p.k) - p.t, Int(p.v) - p.k,
           p.nontrivial());
  for (unsigned s = 0; s <= p.t; ++s) {
    Int num = p.lambda * binomial(p.v - s, p.t - s);
    Int div = binomial(p.k - s, p.t - s);
    add_rule(rules, Rule::LambdaIntegral, static_cast<int>(s), num, div,
             num % div == 0);
  }
  if (p.lambda == 1) {
    {
      Int lhs = p.v, rhs = Int(p.t + 1) * (Int(p.k) - p.t + 1);
      add_rule(rules, Rule::CameronA, -1, lhs, rhs, lhs >= rhs);
    }
    if (p.t > 2) {
      Int lhs = Int(p.v) - p.t + 1;
      Int rhs = (Int(p.k) - p.t + 2) * (Int(p.k) - p.t + 1);
      add_rule(rules, Rule::CameronB, -1, lhs, rhs, lhs >= rhs);
    }
    if ((p.t == 4 || p.t == 5) && Int(4) * p.v - 11 - 4 * (p.t - 4) >= 0) {
      Int rhs = dc::k_max(p.t, p.v);
      add_rule(rules, Rule::KMaxBound, -1, Int(p.k), rhs, Int(p.k) <= rhs);
    }
  }
  add_rule(rules, Rule::BlockTransCap, -1, Int(p.t), Int(7), p.t <= 7);
  if (agammal1_d) {
    Int lhs = (Int(p.v) - 2) * (Int(p.v) - 3);
    Int rhs = Int(p.k) * (Int(p.k) - 1) * (Int(p.k) - 2) * (*agammal1_d);
    add_rule(rules, Rule::AGammaL1Inequality, -1, lhs, rhs, lhs <= rhs);
  }
  if (order_bound) {
    Int num = p.lambda * binomial(p.v, p.t);
    Int div = binomial(p.k, p.t);
    if (num % div == 0) {
      Int b = num / div;
      add_rule(rules, Rule::OrderDivisibility, -1, b, *order_bound,
               *order_bound % b == 0);
    } else {
      add_rule(rules, Rule::OrderDivisibility, -1, num, div, false);
    }
  }
  return rules;
}

// First failing rule only, over machine integers; mirrors evaluate_rules
// for lambda = 1 cells inside a scan range (k <= k_max already enforced).
std::optional<RuleResult> fast_first_failure(std::uint64_t v, std::uint64_t k,
                                             unsigned t, u128 order_bound,
                                             std::uint64_t agammal1_d) {
  for (unsigned s = 0; s <= t; ++s) {
    u128 num = binom128(v - s, t - s);
    u128 div = binom128(k - s, t - s);
    if (num % div != 0)
      return RuleResult{Rule::LambdaIntegral, static_cast<int>(s), to_int(num),
                        to_int(div), false};
  }
  {
    u128 rhs = static_cast<u128>(t + 1) * (k - t + 1);
    if (v < rhs)
      return RuleResult{Rule::CameronA, -1, Int(v), to_int(rhs), false};
  }
  {
    u128 rhs = static_cast<u128>(k - t + 2) * (k - t + 1);
    if (v - t + 1 < rhs)
      return RuleResult{Rule::CameronB, -1, Int(v - t + 1), to_int(rhs), false};
  }
  if (agammal1_d) {
    u128 lhs = static_cast<u128>(v - 2) * (v - 3);
    u128 rhs = static_cast<u128>(k) * (k - 1) * (k - 2) * agammal1_d;
    if (lhs > rhs)
      return RuleResult{Rule::AGammaL1Inequality, -1, to_int(lhs), to_int(rhs),
                        false};
  }
  u128 b = binom128(v, t) / binom128(k, t);  // integral, s = 0 passed
  if (order_bound % b != 0)
    return RuleResult{Rule::OrderDivisibility, -1, to_int(b),
                      to_int(order_bound), false};
  return std::nullopt;
}

std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo,
                                           std::uint64_t hi) {
  std::vector<std::uint64_t> result;
  if (hi < 2) return result;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t p = 2; p * p <= hi; ++p)
    if (!composite[p])
      for (std::uint64_t m = p * p; m <= hi; m += p) composite[m] = true;
  for (std::uint64_t p = 2; p <= hi; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p; q <= hi; q *= p) {
      if (q >= lo) result.push_back(q);
      if (q > hi / p) break;
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::string rule_name(Rule rule, int s) {
  switch (rule) {
    case Rule::NonTrivial: return "non_trivial";
    case Rule::LambdaIntegral:
      return "lambda_integral_s" + (s >= 0 ? std::to_string(s) : "");
    case Rule::CameronA: return "cameron_a";
    case Rule::CameronB: return "cameron_b";
    case Rule::KMaxBound: return "k_max";
    case Rule::BlockTransCap: return "block_transitive_t_cap";
    case Rule::AGammaL1Inequality: return "agammal1_inequality";
    case Rule::OrderDivisibility: return "order_divisibility";
  }
  throw UsageError("unknown rule");
}

bool EliminationReport::eliminated() const {
  return first_failure() != nullptr;
}

const RuleResult* EliminationReport::first_failure() const {
  for (const auto& r : rules)
    if (!r.passes) return &r;
  return nullptr;
}

std::string EliminationReport::verdict() const {
  return eliminated() ? "eliminated" : "survives";
}

EliminationReport admissible(const dc::DesignParams& params) {
  EliminationReport report{params, "generic",
                           evaluate_rules(params, nullptr, nullptr)};
  return report;
}

EliminationReport order_divisibility(const dc::DesignParams& params,
                                     const pg::GroupFamily& family) {
  family.validate();
  if (family.point_count() != params.v)
    throw UsageError("order_divisibility: family v does not match params.v");
  const Int bound = pg::family_order_bound(family);
  EliminationReport report{params, family.describe(), {}};
  Int num = params.lambda * binomial(params.v, params.t);
  Int div = binomial(params.k, params.t);
  add_rule(report.rules, Rule::LambdaIntegral, 0, num, div, num % div == 0);
  if (num % div == 0) {
    Int b = num / div;
    add_rule(report.rules, Rule::OrderDivisibility, -1, b, bound,
             bound % b == 0);
  } else {
    add_rule(report.rules, Rule::OrderDivisibility, -1, num, div, false);
  }
  return report;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(
    std::uint64_t v) {
  if (v < 2) return std::nullopt;
  std::uint64_t p = v;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      p = f;
      break;
    }
  }
  std::uint32_t d = 0;
  std::uint64_t rest = v;
  while (rest % p == 0) {
    rest /= p;
    ++d;
  }
  if (rest != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), d);
}

AGammaL1Report agammal1_elimination(std::uint64_t v) {
  auto pp = prime_power(v);
  if (!pp) throw UsageError("agammal1_elimination: v is not a prime power");
  AGammaL1Report report;
  report.v = v;
  report.p = pp->first;
  report.d = pp->second;
  const Int radicand = Int(4) * v - 15;
  std::uint64_t kmax = radicand >= 0 ? dc::k_max(5, v) : 0;
  if (kmax >= v) kmax = v - 1;  // non-triviality
  for (std::uint64_t k = 6; k <= kmax; ++k) {
    Int lhs = (Int(v) - 2) * (Int(v) - 3);
    Int rhs = Int(k) * (k - 1) * (k - 2) * report.d;
    report.rows.push_back({k, lhs, rhs, lhs <= rhs});
  }
  report.eliminated = std::none_of(report.rows.begin(), report.rows.end(),
                                   [](const auto& r) { return r.satisfiable; });
  return report;
}

std::vector<pg::GroupFamily> case_instances(pg::FamilyTag tag) {
  using pg::FamilyTag;
  using pg::GroupFamily;
  switch (tag) {
    case FamilyTag::Case5: return {{FamilyTag::Case5, 4, 2, 1}};
    case FamilyTag::Case6: {
      std::vector<GroupFamily> out;
      for (std::uint32_t p : {5, 7, 11, 19, 23, 29, 59})
        out.push_back({FamilyTag::Case6, 2, p, 1});
      out.push_back({FamilyTag::Case6, 4, 3, 1});
      return out;
    }
    case FamilyTag::Case7: return {{FamilyTag::Case7, 4, 3, 1}};
    case FamilyTag::Case8: return {{FamilyTag::Case8, 6, 3, 1}};
    default:
      throw UsageError("case_instances: only the fixed-v cases 5-8");
  }
}

namespace {

ScanVerdict scan_one(const pg::GroupFamily& fam, std::uint64_t v, unsigned t,
                     bool full_detail) {
  ScanVerdict verdict;
  verdict.family = fam;
  verdict.v = v;
  verdict.t = t;
  verdict.eliminated = true;

  const Int bound = pg::family_order_bound(fam);
  const bool agamma = fam.tag == pg::FamilyTag::AGammaL1 && t == 5;
  const std::uint32_t d = fam.d;

  const Int radicand = Int(4) * v - 11 - 4 * (t - 4);
  if (radicand < 0) return verdict;  // no admissible k at all
  std::uint64_t kmax = dc::k_max(t, v);
  if (kmax >= v) kmax = v - 1;

  for (std::uint64_t k = t + 1; k <= kmax; ++k) {
    ScanCell cell;
    cell.k = k;
    // Summary mode is only used for the AGammaL1 range scan, where every
    // witness fits machine words; other families are small enough for the
    // exact-arithmetic path.
    if (full_detail || !agamma) {
      auto params = dc::DesignParams::make(t, v, k, 1);
      cell.rules = evaluate_rules(params, &bound,
                                  agamma ? &fam.d : nullptr);
      cell.eliminated = std::any_of(cell.rules.begin(), cell.rules.end(),
                                    [](const auto& r) { return !r.passes; });
      if (!full_detail && cell.eliminated) {
        auto it = std::find_if(cell.rules.begin(), cell.rules.end(),
                               [](const auto& r) { return !r.passes; });
        cell.rules = {*it};
      }
    } else {
      u128 bound128 = (static_cast<u128>(v) * (v - 1)) * d;
      auto failure = fast_first_failure(v, k, t, bound128, d);
      cell.eliminated = failure.has_value();
      if (failure) cell.rules.push_back(std::move(*failure));
    }
    ++verdict.checked;
    if (!cell.eliminated) {
      verdict.eliminated = false;
      verdict.surviving_k.push_back(k);
    }
    // Summary mode keeps the per-cell transcripts only for survivors;
    // storing every eliminated cell of a mega scan would exhaust memory.
    if (full_detail || !cell.eliminated)
      verdict.cells.push_back(std::move(cell));
  }
  return verdict;
}

}  // namespace

std::string ScanVerdict::verdict() const {
  return eliminated ? "eliminated" : "arithmetic survivor";
}

std::vector<ScanVerdict> family_scan(const pg::GroupFamily& family,
                                     const ScanOptions& options) {
  if (options.t != 4 && options.t != 5)
    throw UsageError("family_scan: t must be 4 or 5");

  std::vector<pg::GroupFamily> instances;
  if (family.tag == pg::FamilyTag::AGammaL1 && options.v_max > 0) {
    for (std::uint64_t v :
         prime_powers_in(std::max<std::uint64_t>(options.v_min, 2),
                         options.v_max)) {
      auto pp = prime_power(v);
      instances.push_back({pg::FamilyTag::AGammaL1, pp->second, pp->first, 1});
    }
  } else {
    family.validate();
    instances.push_back(family);
  }

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(instances.size())));
  std::vector<std::vector<ScanVerdict>> partial(threads);
  auto work = [&](unsigned tid) {
    for (std::size_t i = tid; i < instances.size(); i += threads)
      partial[tid].push_back(scan_one(instances[i],
                                      instances[i].point_count(), options.t,
                                      options.full_detail));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < threads; ++tid)
      pool.emplace_back(work, tid);
    for (auto& th : pool) th.join();
  }
  // Deterministic merge, sorted by v.
  std::vector<ScanVerdict> result;
  for (auto& chunk : partial)
    for (auto& verdict : chunk) result.push_back(std::move(verdict));
  std::stable_sort(result.begin(), result.end(),
                   [](const ScanVerdict& a, const ScanVerdict& b) {
                     return a.v < b.v;
                   });
  return result;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

nlohmann::json rule_json(const RuleResult& r) {
  nlohmann::json j;
  j["rule"] = rule_name(r.rule, r.s);
  j["lhs"] = r.lhs.str();
  j["rhs"] = r.rhs.str();
  j["passes"] = r.passes;
  return j;
}

}  // namespace

nlohmann::json report_json(const EliminationReport& report) {
  nlohmann::json j;
  j["family"] = report.family;
  j["t"] = report.params.t;
  j["v"] = report.params.v;
  j["k"] = report.params.k;
  j["lambda"] = report.params.lambda.str();
  j["verdict"] = report.verdict();
  j["rules"] = nlohmann::json::array();
  for (const auto& r : report.rules) j["rules"].push_back(rule_json(r));
  return j;
}

nlohmann::json scan_json(const std::vector<ScanVerdict>& verdicts) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json o;
    o["family"] = pg::family_name(v.family.tag);
    o["v"] = v.v;
    o["t"] = v.t;
    o["verdict"] = v.verdict();
    o["surviving_k"] = v.surviving_k;
    o["cells"] = nlohmann::json::array();
    for (const auto& cell : v.cells) {
      nlohmann::json c;
      c["k"] = cell.k;
      c["eliminated"] = cell.eliminated;
      c["rules"] = nlohmann::json::array();
      for (const auto& r : cell.rules) c["rules"].push_back(rule_json(r));
      o["cells"].push_back(std::move(c));
    }
    j.push_back(std::move(o));
  }
  return j;
}

void write_scan_csv(std::ostream& out,
                    const std::vector<ScanVerdict>& verdicts) {
  out << "family,v,k,rule,witness_lhs,witness_rhs,verdict\n";
  for (const auto& v : verdicts) {
    const std::string fam = pg::family_name(v.family.tag);
    for (const auto& cell : v.cells) {
      for (const auto& r : cell.rules) {
        out << fam << "," << v.v << "," << cell.k << ","
            << rule_name(r.rule, r.s) << "," << r.lhs << "," << r.rhs << ","
            << (r.passes ? "pass" : "fail") << "\n";
      }
    }
    out << fam << "," << v.v << ",,verdict,,," << v.verdict() << "\n";
  }
}

}  // namespace affdes::sv
