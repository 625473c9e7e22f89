#ifndef AFFDES_GFSPACE_HPP
#define AFFDES_GFSPACE_HPP

#include <cstdint>
#include <vector>

#include "affdes/common.hpp"

namespace affdes::gf {

// Largest supported field and point counts. Anything bigger is refused
// explicitly instead of risking silent overflow.
inline constexpr std::uint64_t kMaxFieldSize = 1u << 16;
inline constexpr std::uint64_t kMaxPoints = 1u << 24;

// An element of GF(p^a) in the polynomial basis: coeffs[i] is the
// coefficient of x^i, each in [0, p). Length is always a.
using FieldElement = std::vector<std::uint32_t>;

// GF(p^a) = GF(p)[x] / (modulus). modulus[i] is the coefficient of x^i;
// it is monic of degree a and irreducible over GF(p).
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t a = 0;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus;

  // Shipped default modulus (fixed table for small q, otherwise the
  // lexicographically least irreducible polynomial).
  static FieldSpec make(std::uint32_t p, std::uint32_t a);
  static FieldSpec make(std::uint32_t p, std::uint32_t a,
                        std::vector<std::uint32_t> modulus);

  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(std::uint64_t n);
// Irreducibility over GF(p) by exhaustive search for monic factors of
// degree <= deg/2 (supported for deg <= 8).
bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p);

FieldElement fe_zero(const FieldSpec& f);
FieldElement fe_one(const FieldSpec& f);
FieldElement fe_from_rank(std::uint64_t rank, const FieldSpec& f);
std::uint64_t fe_rank(const FieldElement& x, const FieldSpec& f);
bool fe_is_zero(const FieldElement& x);

FieldElement field_add(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f);
FieldElement field_sub(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f);
FieldElement field_neg(const FieldElement& x, const FieldSpec& f);
FieldElement field_mul(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f);
FieldElement field_pow(const FieldElement& x, std::uint64_t e,
                       const FieldSpec& f);
FieldElement field_inv(const FieldElement& x, const FieldSpec& f);

// Order of x in the multiplicative group; x must be nonzero.
std::uint64_t element_order(const FieldElement& x, const FieldSpec& f);
// Lowest-ranked generator of GF(q)^*.
FieldElement primitive_element(const FieldSpec& f);
// Frobenius x -> x^p.
FieldElement frobenius(const FieldElement& x, const FieldSpec& f);

// The point set of V(d, q): q^d coordinate vectors over GF(q).
struct VectorSpace {
  FieldSpec field;
  std::uint32_t d = 0;
  std::uint64_t v = 0;

  static VectorSpace make(FieldSpec field, std::uint32_t d);
  bool operator==(const VectorSpace&) const = default;
};

using PointIndex = std::uint64_t;
using Point = std::vector<FieldElement>;  // length d

// Base-q positional coding: coordinate 0 is least significant, field
// elements ranked by their coefficient vectors read as base-p integers.
PointIndex point_to_index(const Point& coords, const VectorSpace& space);
Point index_to_point(PointIndex idx, const VectorSpace& space);

// All GF(q)-linear combinations of the generators, as sorted indices.
std::vector<PointIndex> span_points(const std::vector<PointIndex>& gens,
                                    const VectorSpace& space);

}  // namespace affdes::gf

#endif
