#ifndef METIBLT_CELL_CODEC_HPP
#define METIBLT_CELL_CODEC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "metiblt/cell.hpp"
#include "metiblt/config.hpp"

namespace metiblt {

// Wire form of one cell, little-endian: 4-byte signed count, nu/8 key bytes,
// kappa/8 value bytes.
std::size_t cell_wire_size(const MetConfig& config);

// Appends the encoded cell to out. Throws if the count does not fit in 32 bits.
void encode_cell(const Cell& cell, const MetConfig& config, std::vector<std::uint8_t>& out);

// Decodes one cell from the front of `bytes` (must hold cell_wire_size bytes).
Cell decode_cell(std::span<const std::uint8_t> bytes, const MetConfig& config);

std::vector<std::uint8_t> encode_cells(std::span<const Cell> cells, const MetConfig& config);
std::vector<Cell> decode_cells(std::span<const std::uint8_t> bytes, const MetConfig& config);

}  // namespace metiblt

#endif
