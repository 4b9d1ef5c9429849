#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace skewfit {

// Deterministic random stream: identical (seed, stream_id) reproduces the
// identical draw sequence on any platform. The engine (mt19937_64) is fully
// specified by the standard; the variate transforms below are hand-rolled
// because std::*_distribution output is implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id), eng_(mix(seed, stream_id)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on the open interval (0,1); never returns 0 or 1, so log(u) is safe.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method (second variate cached).
  double normal() {
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
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Exp(1)
  double exponential() { return -std::log(uniform()); }

 private:
  static std::uint64_t splitmix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix(splitmix(seed + 0x9e3779b97f4a7c15ULL) ^
                    splitmix(stream + 0x3c6ef372fe94f82aULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace skewfit
