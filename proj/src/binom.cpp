#include "mpat/binom.hpp"

#include "mpat/error.hpp"

namespace mpat {

std::optional<std::uint64_t> binom_u64(std::uint64_t n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = static_cast<unsigned>(n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // r = C(n-k+i, i); the division is exact at every step.
    unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i);
    t /= i;
    if (t >> 64) return std::nullopt;
    r = static_cast<std::uint64_t>(t);
  }
  return r;
}

double binom_d(double n, unsigned k) {
  if (n < 0 || static_cast<double>(k) > n) return 0.0;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

std::uint64_t binom_checked(std::uint64_t n, unsigned k) {
  auto r = binom_u64(n, k);
  if (!r) fail(ErrorCategory::Capacity, "binomial coefficient overflows 64 bits");
  return *r;
}

}  // namespace mpat
