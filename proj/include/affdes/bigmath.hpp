#ifndef AFFDES_BIGMATH_HPP
#define AFFDES_BIGMATH_HPP

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace affdes {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// C(n, k); zero outside 0 <= k <= n.
Int binomial(const Int& n, const Int& k);
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

// Falling factorial n (n-1) ... (n-t+1).
Int falling_factorial(const Int& n, unsigned t);

// floor(sqrt(n)); n must be non-negative.
Int isqrt_floor(const Int& n);

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace affdes

#endif
