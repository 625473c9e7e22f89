#ifndef AFFDES_ORBIT_DESIGNS_HPP
#define AFFDES_ORBIT_DESIGNS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "affdes/bigmath.hpp"
#include "affdes/common.hpp"
#include "affdes/design.hpp"
#include "affdes/permgroup.hpp"

namespace affdes::od {

struct StrengthEntry {
  unsigned s = 0;
  bool uniform = false;
  Int lambda;     // coverage index when uniform
  Int min_count;  // otherwise the observed range
  Int max_count;
};

// One orbit of a group on k-subsets, measured as a candidate design.
struct OrbitDesign {
  std::uint64_t v = 0;
  unsigned k = 0;
  std::vector<std::uint32_t> representative;  // lexicographically least block
  std::uint64_t size = 0;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<StrengthEntry> strength;  // filled by design_strength

  bool uniform_at(unsigned s) const;
  dc::Design as_design() const;
};

// Partition of all k-subsets of [0, v) into orbits, ordered by
// lexicographically least representative. Sizes sum to C(v, k).
std::vector<OrbitDesign> enumerate_orbits(const pg::FiniteGroup& group,
                                          unsigned k);

// Exhaustive coverage counts of the s-subsets, s = 1 .. s_max.
void design_strength(OrbitDesign& orbit, unsigned s_max);

// The 4-design => 5-design implication over every orbit of a 3-transitive
// affine group over GF(2). A violation is a fatal inconsistency.
struct AlltopReport {
  struct Row {
    unsigned k = 0;
    std::vector<std::uint32_t> representative;
    std::uint64_t orbit_size = 0;
    bool is_4_design = false;
    bool is_5_design = false;
  };
  std::vector<Row> rows;
  std::vector<std::size_t> violations;  // rows with is_4 && !is_5
  bool implication_holds() const { return violations.empty(); }
};
// allow_any_3_transitive skips the affine-over-GF(2) requirement; this is
// an exploratory option, not backed by the implication theorem.
AlltopReport alltop_scan(const pg::FiniteGroup& group, unsigned k_lo,
                         unsigned k_hi, bool allow_any_3_transitive = false);

// All orbits on k-subsets that are t-designs with lambda_t = 1.
std::vector<OrbitDesign> steiner_orbit_search(const pg::FiniteGroup& group,
                                              unsigned t, unsigned k);

nlohmann::json orbit_report_json(std::uint64_t v, unsigned k,
                                 const std::string& group_descriptor,
                                 const std::vector<OrbitDesign>& orbits);

}  // namespace affdes::od

#endif
