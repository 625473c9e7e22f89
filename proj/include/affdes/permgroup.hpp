#ifndef AFFDES_PERMGROUP_HPP
#define AFFDES_PERMGROUP_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "affdes/bigmath.hpp"
#include "affdes/common.hpp"
#include "affdes/gfspace.hpp"

namespace affdes::pg {

// A bijection on [0, v). Left-action convention throughout:
// apply(compose(g, h), x) == apply(g, apply(h, x)).
class Permutation {
public:
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::uint32_t degree);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(images_.size()); }
  std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

private:
  std::vector<std::uint32_t> images_;
};

Permutation compose(const Permutation& g, const Permutation& h);  // g after h

// Parses either an image list ("1 0 3 2") or cycle notation ("(0 1)(2 3)").
Permutation parse_permutation(const std::string& line, std::uint32_t degree);
std::string format_cycles(const Permutation& g);

namespace detail {
struct Bsgs;
}

class FiniteGroup {
public:
  FiniteGroup(std::uint32_t degree, std::vector<Permutation> generators);

  std::uint32_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  // Exact order of <generators>, via a base-and-strong-generators chain.
  // Computed once, cached; concurrent readers are safe.
  const Int& order() const;
  bool contains(const Permutation& g) const;

  std::vector<std::uint32_t> orbit(std::uint32_t x) const;
  // Orbit on k-subsets; every member in sorted canonical form, the
  // lexicographically least member first.
  std::vector<std::vector<std::uint32_t>> orbit_of_set(
      std::vector<std::uint32_t> s) const;
  Int stabilizer_order_of_set(const std::vector<std::uint32_t>& s) const;

  bool is_t_transitive(unsigned t) const;
  bool is_t_homogeneous(unsigned t) const;

private:
  const detail::Bsgs& bsgs() const;

  std::uint32_t degree_;
  std::vector<Permutation> generators_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

enum class FamilyTag { AGL, AGammaL1, ASL, ASp, AG2, Case5, Case6, Case7, Case8 };

std::string family_name(FamilyTag tag);
FamilyTag family_from_name(const std::string& name);

// The affine 2-transitive family catalogue. Parameters (d, p, a): the
// point set is V(d, p), v = p^d; for the classical tags the linear part
// lives in dimension d/a over GF(p^a).
struct GroupFamily {
  FamilyTag tag;
  std::uint32_t d = 0;
  std::uint32_t p = 0;
  std::uint32_t a = 1;

  std::uint64_t point_count() const;  // v = p^d
  void validate() const;              // throws ConfigError
  std::string describe() const;
};

// True for tags with explicit generator constructions (AGL, AGammaL1,
// ASL, ASp). The remaining families are handled by order arithmetic only.
bool family_has_generators(FamilyTag tag);

FiniteGroup build_family(const GroupFamily& fam);

// Order of the maximal admissible group in the family (normalizer /
// outer parts included); every group in the family divides this.
Int family_order_bound(const GroupFamily& fam);

// Classical order formulas.
Int gl_order(std::uint32_t m, std::uint64_t q);
Int sl_order(std::uint32_t m, std::uint64_t q);
Int sp_order(std::uint32_t m, std::uint64_t q);  // m even

// Group text format: "degree N" header, then one permutation per line
// (image list or cycle notation; '#' comments allowed).
FiniteGroup read_group(std::istream& in);
void write_group(std::ostream& out, const FiniteGroup& g);

}  // namespace affdes::pg

#endif
