#include "metiblt/framing.hpp"

#include <stdexcept>

namespace metiblt {

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  if (frame.payload.size() > 0xffffffffULL)
    throw std::length_error("frame payload exceeds 32-bit length field");
  std::vector<std::uint8_t> out;
  out.reserve(frame.wire_size());
  out.push_back(static_cast<std::uint8_t>(frame.tag));
  const auto len = static_cast<std::uint32_t>(frame.payload.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(len >> (8 * b)));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

std::optional<Frame> decode_frame(std::span<const std::uint8_t> bytes, std::size_t& consumed) {
  if (bytes.size() - consumed < 5) return std::nullopt;
  const std::uint8_t tag = bytes[consumed];
  if (tag < 1 || tag > 3) throw std::invalid_argument("decode_frame: unknown message tag");
  std::uint32_t len = 0;
  for (int b = 0; b < 4; ++b)
    len |= static_cast<std::uint32_t>(bytes[consumed + 1 + b]) << (8 * b);
  if (bytes.size() - consumed - 5 < len) return std::nullopt;
  Frame frame;
  frame.tag = static_cast<MessageTag>(tag);
  frame.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(consumed + 5),
                       bytes.begin() + static_cast<std::ptrdiff_t>(consumed + 5 + len));
  consumed += 5 + len;
  return frame;
}

}  // namespace metiblt
