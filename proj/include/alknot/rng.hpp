#pragma once

#include <cmath>
#include <cstdint>

namespace alknot {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

/// Stateless splitmix64 finalizer, used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  return splitmix64(z);
}

}  // namespace detail

/// xoshiro256++ seeded through splitmix64.
///
/// Substreams are derived by mixing a stream id into the master seed, so a
/// simulation partitioned over any number of workers draws the same numbers
/// for replication r as a single-threaded run: seed each replication with
/// Rng::substream(master_seed, r) and never share generators across workers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix64(sm);
  }

  static Rng substream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::uint64_t s =
        master_seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 0x632be59bd9b4e019ULL));
    std::uint64_t sm = s;
    return Rng(detail::splitmix64(sm));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Uniform draw on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal draw (Marsaglia polar, one spare cached).
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace alknot
