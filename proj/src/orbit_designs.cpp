#include "affdes/orbit_designs.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_set>

namespace affdes::od {

namespace {

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

std::uint64_t colex_rank(const std::vector<std::uint32_t>& s,
                         const std::vector<std::vector<std::uint64_t>>& table) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += table[s[i]][i + 1];
  return r;
}

std::vector<std::uint32_t> mask_to_subset(std::uint64_t mask) {
  std::vector<std::uint32_t> s;
  while (mask) {
    s.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

// Orbit closure over bit masks (degree <= 64): returns sorted subsets.
std::vector<std::vector<std::uint32_t>> mask_orbit(
    const pg::FiniteGroup& group, std::uint64_t seed) {
  std::unordered_set<std::uint64_t> seen{seed};
  std::deque<std::uint64_t> frontier{seed};
  const std::uint64_t cap = max_states();
  while (!frontier.empty()) {
    std::uint64_t cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : group.generators()) {
      std::uint64_t img = 0;
      std::uint64_t m = cur;
      while (m) {
        img |= std::uint64_t{1} << g(static_cast<std::uint32_t>(
                   std::countr_zero(m)));
        m &= m - 1;
      }
      if (seen.insert(img).second) {
        if (seen.size() > cap)
          throw ResourceError("orbit closure: state count above " +
                              std::to_string(cap));
        frontier.push_back(img);
      }
    }
  }
  std::vector<std::vector<std::uint32_t>> result;
  result.reserve(seen.size());
  for (auto m : seen) result.push_back(mask_to_subset(m));
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

bool OrbitDesign::uniform_at(unsigned s) const {
  for (const auto& e : strength)
    if (e.s == s) return e.uniform;
  throw UsageError("uniform_at: strength not computed for s=" +
                   std::to_string(s));
}

dc::Design OrbitDesign::as_design() const { return dc::Design::make(v, blocks); }

std::vector<OrbitDesign> enumerate_orbits(const pg::FiniteGroup& group,
                                          unsigned k) {
  const std::uint64_t v = group.degree();
  if (k < 1 || k > v) throw UsageError("enumerate_orbits: k out of range");
  // Guard with exact arithmetic first; C(v,k) may not even fit in 64 bits.
  const Int exact_total = binomial(v, k);
  if (exact_total > max_states())
    throw ResourceError("enumerate_orbits: C(v,k) = " + exact_total.str() +
                        " above the state guard");
  const std::uint64_t total = binomial_u64(v, k);
  auto table = binomial_table(v, k);
  std::vector<bool> assigned(total, false);

  std::vector<OrbitDesign> orbits;
  // Walk k-subsets in lexicographic order; the first unassigned subset is
  // the lexicographically least member of a fresh orbit.
  std::vector<std::uint32_t> s(k);
  for (unsigned i = 0; i < k; ++i) s[i] = i;
  while (true) {
    if (!assigned[colex_rank(s, table)]) {
      OrbitDesign orbit;
      orbit.v = v;
      orbit.k = k;
      orbit.representative = s;
      if (v <= 64) {
        std::uint64_t mask = 0;
        for (auto x : s) mask |= std::uint64_t{1} << x;
        orbit.blocks = mask_orbit(group, mask);
      } else {
        orbit.blocks = group.orbit_of_set(s);
      }
      orbit.size = orbit.blocks.size();
      for (const auto& member : orbit.blocks)
        assigned[colex_rank(member, table)] = true;
      orbits.push_back(std::move(orbit));
    }
    // next k-subset in lex order
    unsigned i = k;
    while (i > 0 && s[i - 1] == v - k + (i - 1)) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (unsigned j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return orbits;
}

void design_strength(OrbitDesign& orbit, unsigned s_max) {
  if (s_max < 1 || s_max > orbit.k)
    throw UsageError("design_strength: s_max out of range");
  orbit.strength.clear();
  auto table = binomial_table(orbit.v, s_max);
  for (unsigned s = 1; s <= s_max; ++s) {
    if (binomial(orbit.v, s) > max_states())
      throw ResourceError("design_strength: C(v,s) above the state guard");
    const std::uint64_t total = binomial_u64(orbit.v, s);
    std::vector<std::uint64_t> counts(total, 0);
    std::vector<std::uint32_t> pick(s);
    for (const auto& block : orbit.blocks) {
      std::vector<unsigned> idx(s);
      for (unsigned i = 0; i < s; ++i) idx[i] = i;
      while (true) {
        for (unsigned i = 0; i < s; ++i) pick[i] = block[idx[i]];
        ++counts[colex_rank(pick, table)];
        unsigned i = s;
        while (i > 0 && idx[i - 1] == orbit.k - s + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (unsigned j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    StrengthEntry entry;
    entry.s = s;
    entry.uniform = *lo == *hi;
    if (entry.uniform) entry.lambda = *lo;
    entry.min_count = *lo;
    entry.max_count = *hi;
    orbit.strength.push_back(std::move(entry));
  }
}

AlltopReport alltop_scan(const pg::FiniteGroup& group, unsigned k_lo,
                         unsigned k_hi, bool allow_any_3_transitive) {
  if (k_lo < 1 || k_lo > k_hi || k_hi > group.degree())
    throw UsageError("alltop_scan: bad k range");
  if (!group.is_t_transitive(3))
    throw UsageError("alltop_scan: group is not 3-transitive");
  if (!allow_any_3_transitive) {
    const std::uint64_t v = group.degree();
    if ((v & (v - 1)) != 0)
      throw UsageError("alltop_scan: point count is not a power of 2");
    // Affine over GF(2): every translation x -> x XOR c must be present.
    for (std::uint64_t c = 1; c < v; ++c) {
      std::vector<std::uint32_t> images(v);
      for (std::uint64_t x = 0; x < v; ++x)
        images[x] = static_cast<std::uint32_t>(x ^ c);
      if (!group.contains(pg::Permutation(std::move(images))))
        throw UsageError("alltop_scan: group does not contain the GF(2) "
                         "translations");
    }
  }
  AlltopReport report;
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    auto orbits = enumerate_orbits(group, k);
    for (auto& orbit : orbits) {
      design_strength(orbit, std::min(5u, k));
      AlltopReport::Row row;
      row.k = k;
      row.representative = orbit.representative;
      row.orbit_size = orbit.size;
      row.is_4_design = k >= 4 && orbit.uniform_at(4);
      row.is_5_design = k >= 5 && orbit.uniform_at(5);
      if (row.is_4_design && !row.is_5_design)
        report.violations.push_back(report.rows.size());
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::vector<OrbitDesign> steiner_orbit_search(const pg::FiniteGroup& group,
                                              unsigned t, unsigned k) {
  if (t < 1 || t > k) throw UsageError("steiner_orbit_search: need t <= k");
  auto orbits = enumerate_orbits(group, k);
  std::vector<OrbitDesign> found;
  for (auto& orbit : orbits) {
    design_strength(orbit, t);
    const auto& entry = orbit.strength[t - 1];
    if (entry.uniform && entry.lambda == 1) found.push_back(std::move(orbit));
  }
  return found;
}

nlohmann::json orbit_report_json(std::uint64_t v, unsigned k,
                                 const std::string& group_descriptor,
                                 const std::vector<OrbitDesign>& orbits) {
  nlohmann::json j;
  j["v"] = v;
  j["k"] = k;
  j["group"] = group_descriptor;
  j["orbits"] = nlohmann::json::array();
  for (const auto& orbit : orbits) {
    nlohmann::json o;
    o["representative"] = orbit.representative;
    o["size"] = orbit.size;
    o["strength"] = nlohmann::json::array();
    for (const auto& e : orbit.strength) {
      nlohmann::json s;
      s["s"] = e.s;
      s["uniform"] = e.uniform;
      if (e.uniform)
        s["lambda"] = e.lambda.str();
      else {
        s["min"] = e.min_count.str();
        s["max"] = e.max_count.str();
      }
      o["strength"].push_back(std::move(s));
    }
    j["orbits"].push_back(std::move(o));
  }
  return j;
}

}  // namespace affdes::od
