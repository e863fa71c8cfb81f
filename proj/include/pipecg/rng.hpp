#ifndef PIPECG_RNG_HPP
#define PIPECG_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace pipecg {

/// Deterministic substream seed from (campaign seed, matrix name, scope,
/// indices). Campaign runs keyed this way can execute in any order without
/// changing a single output byte.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view matrix,
                             std::string_view scope, std::uint64_t a = 0,
                             std::uint64_t b = 0, std::uint64_t c = 0);

/// mt19937_64 with hand-rolled draw helpers. The standard distributions are
/// implementation-defined, so they are avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  double uniform01() {  // [0, 1), 53-bit resolution
    return static_cast<double>(engine_() >> 11) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [0, n). Multiply-shift; bias is < 2^-64 per draw.
  std::uint64_t below(std::uint64_t n) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(engine_()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pipecg

#endif  // PIPECG_RNG_HPP
