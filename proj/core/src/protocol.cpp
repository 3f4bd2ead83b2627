#include "metiblt/protocol.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "metiblt/cell_codec.hpp"

namespace metiblt {

namespace {

void check_no_duplicates(std::span<const KeyValuePair> set) {
  std::vector<std::uint64_t> values;
  values.reserve(set.size());
  for (const auto& pair : set) values.push_back(pair.value());
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::invalid_argument("reconciliation input must be a set, found duplicate values");
}

Iblt build_table(std::span<const KeyValuePair> set, MetConfig config,
                 const ProtocolOptions& options) {
  config.validate_for_reconciliation();
  check_no_duplicates(set);
  Iblt table = options.mapper ? Iblt(std::move(config), options.mapper) : Iblt(std::move(config));
  for (const auto& pair : set) table.insert(pair);
  return table;
}

void append_le64(std::uint64_t word, std::vector<std::uint8_t>& out) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(word >> (8 * b)));
}

std::uint64_t read_le64(std::span<const std::uint8_t> bytes) {
  std::uint64_t word = 0;
  for (int b = 0; b < 8; ++b) word |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return word;
}

}  // namespace

Schedule Schedule::every(std::uint64_t step, std::uint64_t total) {
  if (step == 0) throw std::invalid_argument("schedule step must be positive");
  Schedule s;
  for (std::uint64_t at = step; at < total; at += step) s.points.push_back(at);
  s.points.push_back(total);
  return s;
}

void Schedule::validate(std::uint64_t total) const {
  std::uint64_t prev = 0;
  for (std::uint64_t p : points) {
    if (p <= prev) throw std::invalid_argument("schedule points must be strictly increasing");
    if (p > total) throw std::invalid_argument("schedule point beyond table size");
    prev = p;
  }
}

std::uint64_t Transcript::cells_sent() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.cells;
  return total;
}

std::uint64_t Transcript::bytes_sent() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.wire_bytes;
  return total;
}

std::uint64_t Transcript::cell_payload_bytes() const { return cells_sent() * cell_wire_size; }

HostA::HostA(std::span<const KeyValuePair> set, MetConfig config, const ProtocolOptions& options)
    : table_(build_table(set, std::move(config), options)) {
  const std::uint64_t total = table_.config().total_cells();
  Schedule enc =
      options.encoding ? *options.encoding : Schedule::every(options.packet_cells, total);
  enc.validate(total);
  if (enc.points.empty() || enc.points.back() != total)
    enc.points.push_back(total);  // remainder cells form a final burst
  bursts_ = std::move(enc.points);
}

std::optional<Frame> HostA::next_burst() {
  if (got_response_ || burst_index_ >= bursts_.size()) return std::nullopt;
  const std::uint64_t until = bursts_[burst_index_++];
  Frame frame;
  frame.tag = MessageTag::cells;
  if (cursor_ == 0) append_le64(table_.config().digest(), frame.payload);
  const auto cells = table_.cells().subspan(cursor_, until - cursor_);
  const auto bytes = encode_cells(cells, table_.config());
  frame.payload.insert(frame.payload.end(), bytes.begin(), bytes.end());
  cursor_ = until;
  return frame;
}

void HostA::on_response(const Frame& frame) {
  if (frame.tag != MessageTag::ack && frame.tag != MessageTag::fail)
    throw std::invalid_argument("sender expected ack or fail");
  got_response_ = true;
}

bool HostA::finished() const {
  return got_response_ || burst_index_ >= bursts_.size();
}

HostB::HostB(std::span<const KeyValuePair> set, MetConfig config, const ProtocolOptions& options)
    : config_(config),
      table_(build_table(set, std::move(config), options)),
      diff_(table_),
      min_cells_(table_.config().cells_per_type[0]) {
  const std::uint64_t total = table_.config().total_cells();
  Schedule dec =
      options.decoding ? *options.decoding : Schedule::every(options.packet_cells, total);
  dec.validate(total);
  decode_points_ = dec.points;
}

bool HostB::at_decode_point(std::uint64_t received) const {
  if (received == table_.config().total_cells()) return true;  // last resort attempt
  return std::binary_search(decode_points_.begin(), decode_points_.end(), received);
}

std::optional<Frame> HostB::on_cells(const Frame& frame) {
  if (done_) throw std::logic_error("receiver already finished");
  if (frame.tag != MessageTag::cells) throw std::invalid_argument("receiver expected cells");

  std::span<const std::uint8_t> payload = frame.payload;
  if (!saw_digest_) {
    if (payload.size() < 8) throw std::invalid_argument("first cells message lacks config digest");
    const std::uint64_t digest = read_le64(payload);
    payload = payload.subspan(8);
    saw_digest_ = true;
    if (digest != config_.digest()) {
      state_ = ProtocolOutcome::config_mismatch;
      done_ = true;
      return Frame{MessageTag::fail, {}};
    }
  }

  for (const Cell& cell : decode_cells(payload, config_)) diff_.append_remote_cell(cell);
  const std::uint64_t received = diff_.received();
  const std::uint64_t total = table_.config().total_cells();

  // Declaring success before m_1 cells would risk missing elements whose
  // edges all lie beyond the received prefix; every data type is guaranteed
  // an edge within the first type's cells.
  if (received >= min_cells_ && at_decode_point(received)) {
    auto attempt = diff_.modified_recover();
    if (attempt.success) {
      state_ = ProtocolOutcome::success;
      difference_ = std::move(attempt.difference);
      done_ = true;
      return Frame{MessageTag::ack, {}};
    }
  }
  if (received == total) {
    state_ = ProtocolOutcome::failed;
    done_ = true;
    return Frame{MessageTag::fail, {}};
  }
  return std::nullopt;
}

namespace {

TranscriptEntry entry_for(TranscriptEntry::Direction dir, const Frame& frame,
                          std::uint64_t cells) {
  return TranscriptEntry{dir, frame.tag, cells, frame.payload.size(), frame.wire_size()};
}

}  // namespace

ProtocolResult drive_protocol(HostA& a, HostB& b, const MetConfig& config_b) {
  ProtocolResult result;
  result.transcript.cell_wire_size = cell_wire_size(config_b);

  while (!a.finished() || !b.finished()) {
    const std::uint64_t before = a.cells_sent();
    auto burst = a.next_burst();
    if (!burst) break;
    result.transcript.entries.push_back(
        entry_for(TranscriptEntry::Direction::a_to_b, *burst, a.cells_sent() - before));
    auto response = b.on_cells(*burst);
    if (response) {
      result.transcript.entries.push_back(
          entry_for(TranscriptEntry::Direction::b_to_a, *response, 0));
      a.on_response(*response);
      break;
    }
  }

  result.outcome = b.state();
  result.difference = b.difference();
  return result;
}

ProtocolResult run_protocol(std::span<const KeyValuePair> set_a,
                            std::span<const KeyValuePair> set_b, const MetConfig& config,
                            const ProtocolOptions& options) {
  HostA a(set_a, config, options);
  HostB b(set_b, config, options);
  return drive_protocol(a, b, config);
}

namespace {

// Byte pipe with a per-round response slot. The absence of an ack at the end
// of a round is delivered as an empty token, standing in for the timer a
// real deployment would use.
class RoundPipe {
 public:
  void post(std::optional<std::vector<std::uint8_t>> response) {
    std::lock_guard lock(mutex_);
    responses_.push_back(std::move(response));
    ready_.notify_one();
  }

  std::optional<std::vector<std::uint8_t>> wait() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [this] { return !responses_.empty(); });
    auto response = std::move(responses_.front());
    responses_.erase(responses_.begin());
    return response;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::vector<std::optional<std::vector<std::uint8_t>>> responses_;
};

}  // namespace

ProtocolResult run_protocol_threaded(std::span<const KeyValuePair> set_a,
                                     std::span<const KeyValuePair> set_b, const MetConfig& config,
                                     const ProtocolOptions& options) {
  HostA a(set_a, config, options);
  HostB b(set_b, config, options);

  RoundPipe to_b;   // bursts, one per round
  RoundPipe to_a;   // response or empty token, one per round
  ProtocolResult result;
  result.transcript.cell_wire_size = cell_wire_size(config);

  std::thread receiver([&] {
    while (true) {
      auto bytes = to_b.wait();
      if (!bytes) break;  // sender hung up
      std::size_t consumed = 0;
      auto frame = decode_frame(*bytes, consumed);
      if (!frame) throw std::logic_error("torn frame on thread pipe");
      auto response = b.on_cells(*frame);
      to_a.post(response ? std::optional(encode_frame(*response)) : std::nullopt);
    }
  });

  while (!a.finished()) {
    const std::uint64_t before = a.cells_sent();
    auto burst = a.next_burst();
    if (!burst) break;
    result.transcript.entries.push_back(
        entry_for(TranscriptEntry::Direction::a_to_b, *burst, a.cells_sent() - before));
    to_b.post(encode_frame(*burst));
    auto response_bytes = to_a.wait();
    if (response_bytes) {
      std::size_t consumed = 0;
      auto response = decode_frame(*response_bytes, consumed);
      result.transcript.entries.push_back(
          entry_for(TranscriptEntry::Direction::b_to_a, *response, 0));
      a.on_response(*response);
    }
  }
  to_b.post(std::nullopt);
  receiver.join();

  result.outcome = b.state();
  result.difference = b.difference();
  return result;
}

}  // namespace metiblt
