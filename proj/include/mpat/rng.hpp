#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mpat {

// All randomized pipelines derive per-task generators from (master seed,
// task indices) so results are identical regardless of worker count.
// std::mt19937_64 output is fully specified by the standard; samplers that
// the standard leaves implementation-defined (uniform ints, shuffles,
// geometric gaps) are implemented explicitly below.

inline std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = master;
  std::uint64_t z = splitmix64(s);
  s ^= z + a;
  z = splitmix64(s);
  s ^= z + b;
  z = splitmix64(s);
  s ^= z + c;
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0,1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0,n), unbiased (Lemire rejection).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = eng_();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t t = (0 - n) % n;
      while (lo < t) {
        x = eng_();
        m = static_cast<unsigned __int128>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return unit() < p; }

  // Number of failures before the next success of a Bernoulli(p) stream.
  // Saturates at `cap` so callers can bound scans.
  std::uint64_t geometric_skip(double p, std::uint64_t cap) {
    if (p >= 1.0) return 0;
    double u = 1.0 - unit();  // (0,1]
    double g = std::floor(std::log(u) / std::log1p(-p));
    if (!(g >= 0) || g >= static_cast<double>(cap)) return cap;
    return static_cast<std::uint64_t>(g);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mpat
