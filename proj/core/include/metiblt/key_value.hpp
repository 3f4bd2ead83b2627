#ifndef METIBLT_KEY_VALUE_HPP
#define METIBLT_KEY_VALUE_HPP

#include <compare>
#include <cstdint>

#include "metiblt/config.hpp"

namespace metiblt {

// A stored element: value of kappa bits plus its key of nu bits. The key is
// always the configured hash of the value; from_value enforces that,
// from_parts_unchecked is for reassembling pairs whose purity was already
// established (recovery paths).
class KeyValuePair {
 public:
  KeyValuePair() = default;

  static KeyValuePair from_value(std::uint64_t value, const MetConfig& config);
  static KeyValuePair from_parts_unchecked(std::uint64_t key, std::uint64_t value) {
    return KeyValuePair(key, value);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t value() const { return value_; }

  auto operator<=>(const KeyValuePair&) const = default;

 private:
  KeyValuePair(std::uint64_t key, std::uint64_t value) : key_(key), value_(value) {}
  std::uint64_t key_ = 0;
  std::uint64_t value_ = 0;
};

}  // namespace metiblt

#endif
