#ifndef METIBLT_PRF_HPP
#define METIBLT_PRF_HPP

#include <cstdint>

namespace metiblt {

// Keyed 64-bit pseudo-random function. All randomness in the library is
// derived from one seed through this function, with a domain tag per use
// so the individual streams are independent.
enum class PrfDomain : std::uint64_t {
  derive_key = 1,
  assign_type = 2,
  map_cells = 3,
  config_digest = 4,
  trial_seed = 5,
  value_stream = 6,
};

constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t prf64(std::uint64_t seed, PrfDomain domain,
                              std::uint64_t w0, std::uint64_t w1 = 0) {
  std::uint64_t h = mix64(seed ^ 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(domain));
  h = mix64(h ^ w0);
  h = mix64(h ^ w1);
  return h;
}

// Low `bits` bits set; bits must be in [1, 64].
constexpr std::uint64_t low_bits_mask(int bits) {
  return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

}  // namespace metiblt

#endif
