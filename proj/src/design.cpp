#include "affdes/design.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace affdes::dc {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// Binomial table C[n][j] for n <= nmax, j <= jmax, for subset ranking.
std::vector<std::vector<std::uint64_t>> binomial_table(std::uint64_t nmax,
                                                       unsigned jmax) {
  std::vector<std::vector<std::uint64_t>> table(
      nmax + 1, std::vector<std::uint64_t>(jmax + 1, 0));
  for (std::uint64_t n = 0; n <= nmax; ++n) {
    table[n][0] = 1;
    for (unsigned j = 1; j <= jmax && j <= n; ++j)
      table[n][j] = binomial_u64(n, j);
  }
  return table;
}

// Colexicographic rank of a sorted subset: sum C(s[i], i+1).
std::uint64_t colex_rank(const std::vector<std::uint32_t>& s,
                         const std::vector<std::vector<std::uint64_t>>& table) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += table[s[i]][i + 1];
  return r;
}

std::vector<std::uint32_t> colex_unrank(
    std::uint64_t rank, unsigned t, std::uint64_t v,
    const std::vector<std::vector<std::uint64_t>>& table) {
  std::vector<std::uint32_t> s(t);
  std::uint64_t x = v;
  for (unsigned i = t; i >= 1; --i) {
    while (x > 0 && table[x - 1][i] > rank) --x;
    // largest x-1 with C(x-1, i) <= rank
    --x;
    s[i - 1] = static_cast<std::uint32_t>(x);
    rank -= table[x][i];
  }
  return s;
}

void check_block_preservation(const Design& design,
                              const pg::FiniteGroup& group) {
  if (group.degree() != design.v)
    throw UsageError("group degree does not match design point count");
  std::unordered_set<std::vector<std::uint32_t>, VecHash> blocks(
      design.blocks.begin(), design.blocks.end());
  for (const auto& g : group.generators()) {
    for (const auto& block : design.blocks) {
      std::vector<std::uint32_t> image(block.size());
      for (std::size_t i = 0; i < block.size(); ++i) image[i] = g(block[i]);
      std::sort(image.begin(), image.end());
      if (!blocks.count(image))
        throw DomainError("not an automorphism group: a generator maps a "
                          "block outside the block set");
    }
  }
}

}  // namespace

DesignParams DesignParams::make(unsigned t, std::uint64_t v, std::uint64_t k,
                                Int lambda) {
  if (t < 1 || t > k || k > v)
    throw UsageError("design parameters require 1 <= t <= k <= v");
  if (lambda < 1) throw UsageError("lambda must be at least 1");
  return DesignParams{t, v, k, std::move(lambda)};
}

Rat DesignParams::lambda_s(unsigned s) const {
  if (s > t) throw UsageError("lambda_s: s must satisfy 0 <= s <= t");
  return Rat(lambda * binomial(v - s, t - s), binomial(k - s, t - s));
}

std::vector<IdentityCheck> check_identities(const DesignParams& params) {
  std::vector<IdentityCheck> checks;
  const Rat b = params.block_count();
  const Rat r = params.replication();
  {
    Rat lhs = b * params.k, rhs = Rat(params.v) * r;
    checks.push_back({"bk=vr", lhs, rhs, lhs == rhs});
  }
  {
    Rat lhs = Rat(binomial(params.v, params.t)) * params.lambda;
    Rat rhs = b * binomial(params.k, params.t);
    checks.push_back({"C(v,t)l=bC(k,t)", lhs, rhs, lhs == rhs});
  }
  if (params.t >= 2) {
    Rat lhs = r * (params.k - 1);
    Rat rhs = params.lambda_s(2) * (params.v - 1);
    checks.push_back({"r(k-1)=l2(v-1)", lhs, rhs, lhs == rhs});
  }
  return checks;
}

std::vector<DivisibilityResult> divisibility_conditions(
    const DesignParams& params) {
  std::vector<DivisibilityResult> results;
  for (unsigned s = 0; s <= params.t; ++s) {
    Int numerator = params.lambda * binomial(params.v - s, params.t - s);
    Int divisor = binomial(params.k - s, params.t - s);
    results.push_back({s, numerator, divisor, numerator % divisor == 0});
  }
  return results;
}

CameronReport cameron_bounds(const DesignParams& params) {
  if (params.lambda != 1)
    throw UsageError("cameron_bounds: Steiner designs only (lambda = 1)");
  CameronReport rep{};
  const Int v = params.v, k = params.k;
  const unsigned t = params.t;
  rep.a_lhs = v;
  rep.a_rhs = Int(t + 1) * (k - t + 1);
  rep.a_holds = rep.a_lhs >= rep.a_rhs;
  rep.b_applicable = t > 2;
  if (rep.b_applicable) {
    rep.b_lhs = v - t + 1;
    rep.b_rhs = (k - t + 2) * (k - t + 1);
    rep.b_holds = rep.b_lhs >= rep.b_rhs;
    rep.b_equality = rep.b_lhs == rep.b_rhs;
  }
  return rep;
}

std::uint64_t k_max(unsigned t, std::uint64_t v) {
  if (t != 4 && t != 5) throw UsageError("k_max: t must be 4 or 5");
  const unsigned i = t - 4;
  // k <= sqrt(v - (11/4 + i)) + 5/2 + i, exactly:
  // k_max = (isqrt(4v - 11 - 4i) + 5 + 2i) / 2.
  const Int radicand = Int(4) * v - 11 - 4 * i;
  if (radicand < 0)
    throw DomainError("k_max: v too small, radicand negative");
  Int k = (isqrt_floor(radicand) + 5 + 2 * i) / 2;
  return static_cast<std::uint64_t>(k);
}

Design Design::make(std::uint64_t v,
                    std::vector<std::vector<std::uint32_t>> blocks) {
  if (blocks.empty()) throw UsageError("design must have at least one block");
  Design d;
  d.v = v;
  d.k = blocks.front().size();
  for (auto& block : blocks) {
    if (block.size() != d.k)
      throw UsageError("all blocks must have the same size");
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      throw UsageError("block has a repeated point");
    if (block.back() >= v) throw UsageError("block index out of range");
  }
  std::sort(blocks.begin(), blocks.end());
  d.simple =
      std::adjacent_find(blocks.begin(), blocks.end()) == blocks.end();
  d.blocks = std::move(blocks);
  return d;
}

static VerifyResult verify_impl(const Design& design, unsigned t,
                                const Int* lambda) {
  if (t < 1 || t > design.k)
    throw UsageError("verify_design: t must satisfy 1 <= t <= k");
  const std::uint64_t total = binomial_u64(design.v, t);
  if (total > max_states())
    throw ResourceError("verify_design: C(v,t) = " + std::to_string(total) +
                        " above the state guard");
  auto table = binomial_table(design.v, t);
  std::vector<std::uint64_t> counts(total, 0);

  std::vector<std::uint32_t> pick(t);
  for (const auto& block : design.blocks) {
    // Enumerate the t-subsets of the block.
    std::vector<unsigned> idx(t);
    for (unsigned i = 0; i < t; ++i) idx[i] = i;
    while (true) {
      for (unsigned i = 0; i < t; ++i) pick[i] = block[idx[i]];
      ++counts[colex_rank(pick, table)];
      unsigned i = t;
      while (i > 0 && idx[i - 1] == design.k - t + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (unsigned j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  VerifyResult result;
  result.lambda = lambda ? *lambda : Int(counts[0]);
  for (std::uint64_t r = 0; r < total; ++r) {
    if (Int(counts[r]) != result.lambda) {
      result.ok = false;
      result.witness = colex_unrank(r, t, design.v, table);
      result.witness_count = counts[r];
      return result;
    }
  }
  result.ok = true;
  return result;
}

VerifyResult verify_design(const Design& design, unsigned t,
                           const Int& lambda) {
  return verify_impl(design, t, &lambda);
}

VerifyResult verify_design(const Design& design, unsigned t) {
  return verify_impl(design, t, nullptr);
}

bool is_block_transitive(const Design& design, const pg::FiniteGroup& group) {
  if (!design.simple)
    throw UsageError("transitivity checks require a simple design");
  check_block_preservation(design, group);
  auto orbit = group.orbit_of_set(design.blocks.front());
  return orbit.size() == design.blocks.size();
}

bool is_flag_transitive(const Design& design, const pg::FiniteGroup& group) {
  if (!is_block_transitive(design, group)) return false;
  // One orbit on flags: closure from (x0, B0) over pairs (point, block id).
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash>
      block_id;
  for (std::uint32_t i = 0; i < design.blocks.size(); ++i)
    block_id.emplace(design.blocks[i], i);

  const std::uint64_t total_flags =
      static_cast<std::uint64_t>(design.blocks.size()) * design.k;
  std::unordered_set<std::uint64_t> seen;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> frontier;
  auto push = [&](std::uint32_t x, std::uint32_t b) {
    std::uint64_t key = (static_cast<std::uint64_t>(b) << 32) | x;
    if (seen.insert(key).second) frontier.emplace_back(x, b);
  };
  push(design.blocks.front().front(), 0);
  while (!frontier.empty()) {
    auto [x, b] = frontier.front();
    frontier.pop_front();
    for (const auto& g : group.generators()) {
      std::vector<std::uint32_t> image(design.k);
      for (std::size_t i = 0; i < design.k; ++i)
        image[i] = g(design.blocks[b][i]);
      std::sort(image.begin(), image.end());
      push(g(x), block_id.at(image));
    }
  }
  return seen.size() == total_flags;
}

HomogeneityReport homogeneity_implication_check(const Design& design,
                                                const pg::FiniteGroup& group,
                                                unsigned t) {
  if (t < 2) throw UsageError("homogeneity_implication_check: t >= 2");
  if (!is_block_transitive(design, group))
    throw UsageError("homogeneity_implication_check: group is not "
                     "block-transitive on the design");
  HomogeneityReport rep;
  rep.block_degree = t / 2;
  rep.block_holds = group.is_t_homogeneous(rep.block_degree);
  if (rep.block_holds) rep.verified_degree = rep.block_degree;
  rep.flag_transitive = is_flag_transitive(design, group);
  if (rep.flag_transitive) {
    rep.flag_degree = (t + 1) / 2;
    rep.flag_holds = group.is_t_homogeneous(rep.flag_degree);
    if (rep.flag_holds) rep.verified_degree =
        std::max(rep.verified_degree, rep.flag_degree);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// File formats.

DesignFile read_design_text(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  DesignFile file;
  std::uint64_t v = 0, k = 0;
  bool have_header = false;
  std::vector<std::vector<std::uint32_t>> blocks;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream iss(line);
    if (!have_header) {
      std::string lambda_str;
      if (!(iss >> file.t >> v >> k >> lambda_str))
        throw ParseError("expected header 't v k lambda'", lineno);
      try {
        file.lambda = Int(lambda_str);
      } catch (const std::exception&) {
        throw ParseError("bad lambda value", lineno);
      }
      have_header = true;
      continue;
    }
    std::vector<std::uint32_t> block;
    std::uint64_t x;
    while (iss >> x) {
      if (x >= v) throw ParseError("block index out of range", lineno);
      if (!block.empty() && x <= block.back())
        throw ParseError("block indices must be strictly ascending", lineno);
      block.push_back(static_cast<std::uint32_t>(x));
    }
    if (!iss.eof()) throw ParseError("malformed block line", lineno);
    if (block.size() != k)
      throw ParseError("block has wrong size", lineno);
    blocks.push_back(std::move(block));
  }
  if (!have_header) throw ParseError("missing header line", lineno + 1);
  file.design = Design::make(v, std::move(blocks));
  return file;
}

void write_design_text(std::ostream& out, const DesignFile& file) {
  out << file.t << " " << file.design.v << " " << file.design.k << " "
      << file.lambda << "\n";
  for (const auto& block : file.design.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i)
      out << (i ? " " : "") << block[i];
    out << "\n";
  }
}

DesignFile read_design_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 1);
  }
  DesignFile file;
  try {
    file.t = j.at("t").get<unsigned>();
    std::uint64_t v = j.at("v").get<std::uint64_t>();
    if (j.at("lambda").is_string())
      file.lambda = Int(j.at("lambda").get<std::string>());
    else
      file.lambda = Int(j.at("lambda").get<std::uint64_t>());
    std::vector<std::vector<std::uint32_t>> blocks =
        j.at("blocks").get<std::vector<std::vector<std::uint32_t>>>();
    file.design = Design::make(v, std::move(blocks));
    if (file.design.k != j.at("k").get<std::uint64_t>())
      throw ParseError("k does not match block size", 1);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 1);
  }
  return file;
}

void write_design_json(std::ostream& out, const DesignFile& file) {
  nlohmann::json j;
  j["t"] = file.t;
  j["v"] = file.design.v;
  j["k"] = file.design.k;
  if (file.lambda <= Int(~std::uint64_t{0}))
    j["lambda"] = static_cast<std::uint64_t>(file.lambda);
  else
    j["lambda"] = file.lambda.str();
  j["blocks"] = file.design.blocks;
  out << j.dump(2) << "\n";
}

}  // namespace affdes::dc
