#ifndef AFFDES_DESIGN_HPP
#define AFFDES_DESIGN_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "affdes/bigmath.hpp"
#include "affdes/common.hpp"
#include "affdes/permgroup.hpp"

namespace affdes::dc {

// The parameter tuple (t, v, k, lambda) with its derived quantities.
struct DesignParams {
  unsigned t = 0;
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  Int lambda = 1;

  static DesignParams make(unsigned t, std::uint64_t v, std::uint64_t k,
                           Int lambda = 1);

  bool nontrivial() const { return t < k && k < v; }

  // lambda_s = lambda C(v-s, t-s) / C(k-s, t-s); s = 0 gives b, s = 1 gives r.
  Rat lambda_s(unsigned s) const;
  Rat block_count() const { return lambda_s(0); }
  Rat replication() const { return lambda_s(1); }
};

struct IdentityCheck {
  std::string id;  // "bk=vr", "C(v,t)l=bC(k,t)", "r(k-1)=l2(v-1)"
  Rat lhs, rhs;
  bool holds;
};
std::vector<IdentityCheck> check_identities(const DesignParams& params);

struct DivisibilityResult {
  unsigned s;
  Int numerator;  // lambda C(v-s, t-s)
  Int divisor;    // C(k-s, t-s)
  bool passes;
};
// s = 0 .. t; s = 0 is block-count integrality.
std::vector<DivisibilityResult> divisibility_conditions(
    const DesignParams& params);

struct CameronReport {
  Int a_lhs, a_rhs;  // v >= (t+1)(k-t+1)
  bool a_holds;
  bool b_applicable;  // t > 2
  Int b_lhs, b_rhs;   // v-t+1 >= (k-t+2)(k-t+1)
  bool b_holds;
  bool b_equality;  // the (3,4,8),(3,6,22),(3,12,112),(4,7,23),(5,8,24) cases
};
// Steiner designs only (lambda = 1).
CameronReport cameron_bounds(const DesignParams& params);

// Largest admissible k for a non-trivial Steiner t-design, t in {4, 5}.
std::uint64_t k_max(unsigned t, std::uint64_t v);

// A block set on v points. Blocks are sorted index tuples.
struct Design {
  std::uint64_t v = 0;
  std::uint64_t k = 0;
  std::vector<std::vector<std::uint32_t>> blocks;
  bool simple = true;

  static Design make(std::uint64_t v,
                     std::vector<std::vector<std::uint32_t>> blocks);
};

struct VerifyResult {
  bool ok = false;
  Int lambda;                          // the verified (or inferred) index
  std::vector<std::uint32_t> witness;  // first offending t-subset if !ok
  Int witness_count;
};
VerifyResult verify_design(const Design& design, unsigned t,
                           const Int& lambda);
// Infers lambda from the count of the first t-subset.
VerifyResult verify_design(const Design& design, unsigned t);

// Both throw DomainError("not an automorphism group") when a generator
// fails to preserve the block set.
bool is_block_transitive(const Design& design, const pg::FiniteGroup& group);
bool is_flag_transitive(const Design& design, const pg::FiniteGroup& group);

struct HomogeneityReport {
  unsigned block_degree = 0;  // floor(t/2)
  bool block_holds = false;
  bool flag_transitive = false;
  unsigned flag_degree = 0;  // floor((t+1)/2), when flag-transitive
  bool flag_holds = false;
  unsigned verified_degree = 0;
};
// Requires is_block_transitive(design, group) to hold already.
HomogeneityReport homogeneity_implication_check(const Design& design,
                                                const pg::FiniteGroup& group,
                                                unsigned t);

// Text design file: header "t v k lambda", then one block per line as
// space-separated ascending indices. JSON mirror with the same fields.
struct DesignFile {
  unsigned t = 0;
  Int lambda = 1;
  Design design;
};
DesignFile read_design_text(std::istream& in);
void write_design_text(std::ostream& out, const DesignFile& file);
DesignFile read_design_json(std::istream& in);
void write_design_json(std::ostream& out, const DesignFile& file);

}  // namespace affdes::dc

#endif
