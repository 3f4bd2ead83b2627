#include "metiblt/cell_codec.hpp"

#include <limits>
#include <stdexcept>

namespace metiblt {

namespace {

void put_le(std::uint64_t word, int bytes, std::vector<std::uint8_t>& out) {
  for (int b = 0; b < bytes; ++b) out.push_back(static_cast<std::uint8_t>(word >> (8 * b)));
}

std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t at, int n) {
  std::uint64_t word = 0;
  for (int b = 0; b < n; ++b) word |= static_cast<std::uint64_t>(bytes[at + b]) << (8 * b);
  return word;
}

}  // namespace

std::size_t cell_wire_size(const MetConfig& config) {
  return 4 + static_cast<std::size_t>(config.nu_bits / 8) +
         static_cast<std::size_t>(config.kappa_bits / 8);
}

void encode_cell(const Cell& cell, const MetConfig& config, std::vector<std::uint8_t>& out) {
  if (cell.count > std::numeric_limits<std::int32_t>::max() ||
      cell.count < std::numeric_limits<std::int32_t>::min())
    throw std::overflow_error("cell count does not fit in 32 bits");
  put_le(static_cast<std::uint64_t>(static_cast<std::uint32_t>(cell.count)), 4, out);
  put_le(cell.key_sum, config.nu_bits / 8, out);
  put_le(cell.value_sum, config.kappa_bits / 8, out);
}

Cell decode_cell(std::span<const std::uint8_t> bytes, const MetConfig& config) {
  if (bytes.size() < cell_wire_size(config))
    throw std::invalid_argument("decode_cell: truncated input");
  Cell cell;
  cell.count = static_cast<std::int32_t>(static_cast<std::uint32_t>(get_le(bytes, 0, 4)));
  cell.key_sum = get_le(bytes, 4, config.nu_bits / 8);
  cell.value_sum = get_le(bytes, 4 + config.nu_bits / 8, config.kappa_bits / 8);
  return cell;
}

std::vector<std::uint8_t> encode_cells(std::span<const Cell> cells, const MetConfig& config) {
  std::vector<std::uint8_t> out;
  out.reserve(cells.size() * cell_wire_size(config));
  for (const Cell& c : cells) encode_cell(c, config, out);
  return out;
}

std::vector<Cell> decode_cells(std::span<const std::uint8_t> bytes, const MetConfig& config) {
  const std::size_t stride = cell_wire_size(config);
  if (bytes.size() % stride != 0)
    throw std::invalid_argument("decode_cells: input is not a whole number of cells");
  std::vector<Cell> cells;
  cells.reserve(bytes.size() / stride);
  for (std::size_t at = 0; at < bytes.size(); at += stride)
    cells.push_back(decode_cell(bytes.subspan(at), config));
  return cells;
}

}  // namespace metiblt
