#ifndef METIBLT_FRAMING_HPP
#define METIBLT_FRAMING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace metiblt {

enum class MessageTag : std::uint8_t {
  cells = 1,
  ack = 2,
  fail = 3,
};

// One protocol message: tag byte, 4-byte little-endian payload length,
// payload. The first cells message carries an 8-byte config digest before
// the cell bytes.
struct Frame {
  MessageTag tag = MessageTag::cells;
  std::vector<std::uint8_t> payload;

  std::size_t wire_size() const { return 5 + payload.size(); }
  bool operator==(const Frame&) const = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);

// Consumes one frame from the front of a byte stream; returns nothing if
// the stream does not yet hold a complete frame. `consumed` is advanced past
// the frame on success.
std::optional<Frame> decode_frame(std::span<const std::uint8_t> bytes, std::size_t& consumed);

}  // namespace metiblt

#endif
