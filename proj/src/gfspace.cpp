#include "affdes/gfspace.hpp"

#include <algorithm>
#include <set>

namespace affdes::gf {

namespace {

using Poly = std::vector<std::uint32_t>;  // coeffs mod p, index = power

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

// Remainder of u divided by the monic polynomial m, mod p.
Poly poly_mod(Poly u, const Poly& m, std::uint32_t p) {
  poly_trim(u);
  const int dm = poly_deg(m);
  while (poly_deg(u) >= dm && dm >= 0) {
    const std::uint32_t lead = u.back();
    const int shift = poly_deg(u) - dm;
    for (int i = 0; i <= dm; ++i) {
      std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[i] % p;
      std::uint32_t& c = u[i + shift];
      c = static_cast<std::uint32_t>((c + p - sub) % p);
    }
    poly_trim(u);
  }
  return u;
}

std::uint64_t pow_u64_checked(std::uint64_t b, std::uint32_t e,
                              std::uint64_t cap, const char* what) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > cap / b) throw ConfigError(what);
    r *= b;
  }
  return r;
}

// Fixed default moduli for small fields so that element ranks (and hence
// every downstream file format) are reproducible across runs.
const std::vector<std::uint32_t>* default_modulus_table(std::uint32_t p,
                                                        std::uint32_t a) {
  static const struct Entry {
    std::uint32_t p, a;
    std::vector<std::uint32_t> modulus;
  } table[] = {
      {2, 2, {1, 1, 1}},           // x^2 + x + 1
      {2, 3, {1, 1, 0, 1}},        // x^3 + x + 1
      {2, 4, {1, 1, 0, 0, 1}},     // x^4 + x + 1
      {2, 5, {1, 0, 1, 0, 0, 1}},  // x^5 + x^2 + 1
      {3, 2, {2, 2, 1}},           // x^2 + 2x + 2
      {3, 3, {1, 2, 0, 1}},        // x^3 + 2x + 1
  };
  for (const auto& e : table)
    if (e.p == p && e.a == a) return &e.modulus;
  return nullptr;
}

Poly search_irreducible(std::uint32_t p, std::uint32_t a) {
  // Lexicographically least monic irreducible of degree a: enumerate the
  // lower coefficients as a base-p counter.
  Poly f(a + 1, 0);
  f[a] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    std::uint32_t i = 0;
    while (i < a && ++f[i] == p) f[i++] = 0;
    if (i == a) throw ConfigError("no irreducible polynomial found");
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  Poly f = poly;
  poly_trim(f);
  const int deg = poly_deg(f);
  if (deg <= 0) return false;
  if (deg == 1) return true;
  if (deg > 8) throw UsageError("is_irreducible: degree above 8 unsupported");
  // Try every monic polynomial of degree 1 .. deg/2 as a divisor.
  for (int dg = 1; dg <= deg / 2; ++dg) {
    Poly g(dg + 1, 0);
    g[dg] = 1;
    std::uint64_t count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::uint64_t m = n;
      for (int i = 0; i < dg; ++i) {
        g[i] = static_cast<std::uint32_t>(m % p);
        m /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t a) {
  if (const auto* m = default_modulus_table(p, a))
    return make(p, a, *m);
  if (a == 1) return make(p, 1, {0, 1});
  if (!is_prime(p)) throw ConfigError("field characteristic must be prime");
  // Enforce the size cap before committing to the irreducibility search.
  pow_u64_checked(p, a, kMaxFieldSize, "field size above cap 2^16");
  return make(p, a, search_irreducible(p, a));
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t a,
                          std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) throw ConfigError("field characteristic must be prime");
  if (a == 0) throw ConfigError("field extension degree must be positive");
  FieldSpec f;
  f.p = p;
  f.a = a;
  f.q = pow_u64_checked(p, a, kMaxFieldSize, "field size above cap 2^16");
  if (modulus.size() != a + 1 || modulus[a] != 1)
    throw ConfigError("modulus must be monic of degree a");
  for (auto c : modulus)
    if (c >= p) throw ConfigError("modulus coefficient out of range");
  if (a > 1 && !is_irreducible(modulus, p))
    throw ConfigError("modulus is reducible");
  f.modulus = std::move(modulus);
  return f;
}

FieldElement fe_zero(const FieldSpec& f) { return FieldElement(f.a, 0); }

FieldElement fe_one(const FieldSpec& f) {
  FieldElement e(f.a, 0);
  e[0] = 1;
  return e;
}

FieldElement fe_from_rank(std::uint64_t rank, const FieldSpec& f) {
  if (rank >= f.q) throw UsageError("element rank out of range");
  FieldElement e(f.a, 0);
  for (std::uint32_t i = 0; i < f.a; ++i) {
    e[i] = static_cast<std::uint32_t>(rank % f.p);
    rank /= f.p;
  }
  return e;
}

std::uint64_t fe_rank(const FieldElement& x, const FieldSpec& f) {
  if (x.size() != f.a) throw UsageError("element has wrong length");
  std::uint64_t r = 0;
  for (std::uint32_t i = f.a; i-- > 0;) {
    if (x[i] >= f.p) throw UsageError("element coefficient out of range");
    r = r * f.p + x[i];
  }
  return r;
}

bool fe_is_zero(const FieldElement& x) {
  return std::all_of(x.begin(), x.end(), [](std::uint32_t c) { return c == 0; });
}

static void check_pair(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f) {
  if (x.size() != f.a || y.size() != f.a)
    throw UsageError("field elements do not match the field spec");
}

FieldElement field_add(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f) {
  check_pair(x, y, f);
  FieldElement r(f.a);
  for (std::uint32_t i = 0; i < f.a; ++i) r[i] = (x[i] + y[i]) % f.p;
  return r;
}

FieldElement field_neg(const FieldElement& x, const FieldSpec& f) {
  check_pair(x, x, f);
  FieldElement r(f.a);
  for (std::uint32_t i = 0; i < f.a; ++i) r[i] = (f.p - x[i]) % f.p;
  return r;
}

FieldElement field_sub(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f) {
  check_pair(x, y, f);
  FieldElement r(f.a);
  for (std::uint32_t i = 0; i < f.a; ++i) r[i] = (x[i] + f.p - y[i]) % f.p;
  return r;
}

FieldElement field_mul(const FieldElement& x, const FieldElement& y,
                       const FieldSpec& f) {
  check_pair(x, y, f);
  Poly prod(2 * f.a - 1, 0);
  for (std::uint32_t i = 0; i < f.a; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < f.a; ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % f.p);
  }
  Poly rem = f.a > 1 ? poly_mod(std::move(prod), f.modulus, f.p) : prod;
  rem.resize(f.a, 0);
  return rem;
}

FieldElement field_pow(const FieldElement& x, std::uint64_t e,
                       const FieldSpec& f) {
  FieldElement base = x, result = fe_one(f);
  while (e > 0) {
    if (e & 1) result = field_mul(result, base, f);
    base = field_mul(base, base, f);
    e >>= 1;
  }
  return result;
}

FieldElement field_inv(const FieldElement& x, const FieldSpec& f) {
  if (fe_is_zero(x)) throw DomainError("field_inv: zero has no inverse");
  return field_pow(x, f.q - 2, f);
}

std::uint64_t element_order(const FieldElement& x, const FieldSpec& f) {
  if (fe_is_zero(x)) throw DomainError("element_order: zero element");
  FieldElement acc = x;
  const FieldElement one = fe_one(f);
  std::uint64_t n = 1;
  while (acc != one) {
    acc = field_mul(acc, x, f);
    ++n;
  }
  return n;
}

FieldElement primitive_element(const FieldSpec& f) {
  for (std::uint64_t r = 1; r < f.q; ++r) {
    FieldElement c = fe_from_rank(r, f);
    if (element_order(c, f) == f.q - 1) return c;
  }
  throw ConfigError("no primitive element found");  // unreachable
}

FieldElement frobenius(const FieldElement& x, const FieldSpec& f) {
  return field_pow(x, f.p, f);
}

VectorSpace VectorSpace::make(FieldSpec field, std::uint32_t d) {
  if (d < 1) throw ConfigError("vector space dimension must be >= 1");
  VectorSpace s;
  s.v = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (s.v > kMaxPoints / field.q)
      throw ConfigError("point count above cap 2^24");
    s.v *= field.q;
  }
  s.field = std::move(field);
  s.d = d;
  return s;
}

PointIndex point_to_index(const Point& coords, const VectorSpace& space) {
  if (coords.size() != space.d)
    throw UsageError("coordinate vector has wrong length");
  PointIndex idx = 0;
  for (std::uint32_t i = space.d; i-- > 0;)
    idx = idx * space.field.q + fe_rank(coords[i], space.field);
  return idx;
}

Point index_to_point(PointIndex idx, const VectorSpace& space) {
  if (idx >= space.v) throw UsageError("point index out of range");
  Point coords(space.d);
  for (std::uint32_t i = 0; i < space.d; ++i) {
    coords[i] = fe_from_rank(idx % space.field.q, space.field);
    idx /= space.field.q;
  }
  return coords;
}

std::vector<PointIndex> span_points(const std::vector<PointIndex>& gens,
                                    const VectorSpace& space) {
  // The empty span is the zero subspace.
  if (gens.empty()) return {0};
  const FieldSpec& f = space.field;
  std::set<PointIndex> span{0};
  for (PointIndex g : gens) {
    Point gp = index_to_point(g, space);
    std::set<PointIndex> extended;
    for (std::uint64_t c = 0; c < f.q; ++c) {
      FieldElement scalar = fe_from_rank(c, f);
      Point scaled(space.d);
      for (std::uint32_t i = 0; i < space.d; ++i)
        scaled[i] = field_mul(scalar, gp[i], f);
      for (PointIndex s : span) {
        Point sp = index_to_point(s, space);
        for (std::uint32_t i = 0; i < space.d; ++i)
          sp[i] = field_add(sp[i], scaled[i], f);
        extended.insert(point_to_index(sp, space));
      }
    }
    span = std::move(extended);
  }
  return {span.begin(), span.end()};
}

}  // namespace affdes::gf
