#include "affdes/bigmath.hpp"

#include <cstdlib>

#include "affdes/common.hpp"

namespace affdes {

std::uint64_t max_states() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("AFFDES_MAX_STATES")) {
      char* end = nullptr;
      unsigned long long val = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && val > 0) return static_cast<std::uint64_t>(val);
    }
    return std::uint64_t{100000000};  // 10^8
  }();
  return cap;
}

Int binomial(const Int& n, const Int& k) {
  if (k < 0 || k > n) return 0;
  Int kk = k;
  if (n - k < kk) kk = n - k;
  Int result = 1;
  for (Int i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    result /= i;  // exact at every step
  }
  return result;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (n - k < k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > ~std::uint64_t{0})
      throw DomainError("binomial_u64 overflow");
  }
  return static_cast<std::uint64_t>(result);
}

Int falling_factorial(const Int& n, unsigned t) {
  Int result = 1;
  for (unsigned i = 0; i < t; ++i) result *= n - i;
  return result;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw DomainError("isqrt_floor: negative radicand");
  Int root = boost::multiprecision::sqrt(n);
  // sqrt on cpp_int is already the floor; keep the exact post-check anyway.
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  return root;
}

}  // namespace affdes
