#ifndef METIBLT_PROTOCOL_HPP
#define METIBLT_PROTOCOL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "metiblt/difference.hpp"
#include "metiblt/framing.hpp"
#include "metiblt/iblt.hpp"

namespace metiblt {

// Cumulative cell counts at which something happens: the encoder finishes a
// burst, or the decoder attempts recovery. Strictly increasing, capped by
// the table size when used.
struct Schedule {
  std::vector<std::uint64_t> points;

  static Schedule every(std::uint64_t step, std::uint64_t total);
  void validate(std::uint64_t total) const;
};

struct ProtocolOptions {
  std::uint64_t packet_cells = 1;  // burst size when no explicit schedule is given
  std::optional<Schedule> encoding;
  std::optional<Schedule> decoding;
  std::shared_ptr<const CellMapper> mapper;  // test hook; default is the PRF mapper
};

enum class ProtocolOutcome { success, failed, config_mismatch };

struct TranscriptEntry {
  enum class Direction { a_to_b, b_to_a };
  Direction direction;
  MessageTag tag;
  std::uint64_t cells = 0;  // cells carried (cells messages only)
  std::uint64_t payload_bytes = 0;
  std::uint64_t wire_bytes = 0;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  std::size_t cell_wire_size = 0;

  std::uint64_t cells_sent() const;
  std::uint64_t bytes_sent() const;        // frame bytes in both directions
  std::uint64_t cell_payload_bytes() const;  // cells_sent * cell_wire_size
};

struct ProtocolResult {
  ProtocolOutcome outcome = ProtocolOutcome::failed;
  SignedDifference difference;  // meaningful on success
  Transcript transcript;
};

// Sender side: streams its table's cells in index order, each cell at most
// once, and stops as soon as the peer acknowledges.
class HostA {
 public:
  HostA(std::span<const KeyValuePair> set, MetConfig config, const ProtocolOptions& options = {});

  // Next cells message, or nothing once all cells are sent or the peer
  // answered. The first message carries the config digest before the cells.
  std::optional<Frame> next_burst();
  void on_response(const Frame& frame);
  bool finished() const;
  std::uint64_t cells_sent() const { return cursor_; }

 private:
  Iblt table_;
  std::vector<std::uint64_t> bursts_;  // cumulative cells after each burst
  std::size_t burst_index_ = 0;
  std::uint64_t cursor_ = 0;
  bool got_response_ = false;
};

// Receiver side: subtracts arriving cells from its local table and attempts
// recovery at each decoding point once at least m_1 cells arrived. Answers
// with an ack on success, a fail after the last cell, and stays silent
// otherwise (the implicit go-on signal).
class HostB {
 public:
  HostB(std::span<const KeyValuePair> set, MetConfig config, const ProtocolOptions& options = {});

  std::optional<Frame> on_cells(const Frame& frame);
  ProtocolOutcome state() const { return state_; }
  bool finished() const { return done_; }
  const SignedDifference& difference() const { return difference_; }
  std::uint64_t cells_received() const { return diff_.received(); }

 private:
  bool at_decode_point(std::uint64_t received) const;

  MetConfig config_;
  Iblt table_;
  DifferenceIblt diff_;
  std::vector<std::uint64_t> decode_points_;
  std::uint64_t min_cells_ = 0;  // cells of the first type
  bool saw_digest_ = false;
  bool done_ = false;
  ProtocolOutcome state_ = ProtocolOutcome::failed;
  SignedDifference difference_;
};

// Drives two hosts to completion in one thread, alternating burst and
// response. Works for mismatched host configs too (the digest handshake
// settles it).
ProtocolResult drive_protocol(HostA& a, HostB& b, const MetConfig& config_b);

ProtocolResult run_protocol(std::span<const KeyValuePair> set_a,
                            std::span<const KeyValuePair> set_b, const MetConfig& config,
                            const ProtocolOptions& options = {});

// Same exchange with each host on its own thread, connected by byte queues.
// The transcript is identical to the single-threaded run.
ProtocolResult run_protocol_threaded(std::span<const KeyValuePair> set_a,
                                     std::span<const KeyValuePair> set_b, const MetConfig& config,
                                     const ProtocolOptions& options = {});

}  // namespace metiblt

#endif
