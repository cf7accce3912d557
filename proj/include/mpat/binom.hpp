#pragma once

#include <cstdint>
#include <optional>

namespace mpat {

// C(n,k) as an exact 64-bit integer, std::nullopt on overflow.
std::optional<std::uint64_t> binom_u64(std::uint64_t n, unsigned k);

// C(n,k) in double precision. Exact while the value stays below 2^53,
// otherwise accurate to a few ulp (used for the huge exponents c_i of
// large-N model evaluations).
double binom_d(double n, unsigned k);

// Exact C(n,k) or an Error(Capacity) if it does not fit in 64 bits.
std::uint64_t binom_checked(std::uint64_t n, unsigned k);

}  // namespace mpat
