// Binary sensor-stream codec: fixed 20-byte frames with sync bytes, a
// wrapping sequence counter, eight little-endian 16-bit channels, and an XOR
// checksum. The decoder resynchronizes after corruption and reports stream
// diagnostics.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pedalmap/mechanics.hpp"

namespace pedalmap {

inline constexpr std::size_t kWireFrameSize = 20;
inline constexpr std::uint8_t kSync0 = 0xAA;
inline constexpr std::uint8_t kSync1 = 0x55;

struct RawFrame {
  std::uint8_t sequence = 0;
  std::array<std::uint16_t, kNumSensors> counts{};
};

// Layout: [0xAA, 0x55, seq, ch0.lo, ch0.hi, ..., ch7.lo, ch7.hi, checksum]
// where checksum = XOR of the preceding 19 bytes.
std::array<std::uint8_t, kWireFrameSize> encode_frame(const RawFrame& frame);

struct StreamDiagnostics {
  std::uint64_t frames = 0;             // frames accepted
  std::uint64_t checksum_failures = 0;  // sync found but checksum mismatched
  std::uint64_t bytes_skipped = 0;      // bytes discarded while resyncing
  std::uint64_t sequence_gaps = 0;      // accepted-frame seq steps != +1
};

// Incremental decoder: feed bytes in any chunking; frames come out in order.
// On a checksum failure the scan resumes one byte past the sync match, so a
// corrupted frame never masks a genuine one behind it.
class FrameDecoder {
 public:
  std::vector<RawFrame> feed(const std::uint8_t* data, std::size_t size);
  std::vector<RawFrame> feed(const std::vector<std::uint8_t>& data);

  const StreamDiagnostics& diagnostics() const { return diag_; }

  // Monotone frame index extending the 8-bit counter across wraps,
  // advanced by the accepted-frame deltas. First accepted frame is index 0.
  std::uint64_t extended_sequence() const { return extended_; }

 private:
  std::vector<std::uint8_t> buffer_;
  StreamDiagnostics diag_;
  std::uint64_t extended_ = 0;
  bool have_first_ = false;
  std::uint8_t last_seq_ = 0;
};

// Counts -> engineering units: force = gain * (count - offset), clamped at 0
// from below (a load cell cannot pull).
struct ChannelCalibration {
  std::array<double, kNumSensors> gain{};    // N per count, > 0
  std::array<double, kNumSensors> offset{};  // counts at zero force
  std::array<std::uint16_t, kNumSensors> saturation{};  // full-scale counts
  static ChannelCalibration defaults();
};

struct CalibratedFrame {
  SensorFrame frame;
  std::array<bool, kNumSensors> saturated{};  // count >= full-scale counts
  std::array<bool, kNumSensors> underflow{};  // count below offset, clamped
};

// Time base: one frame every 20 ms of extended sequence index.
CalibratedFrame counts_to_frame(const RawFrame& frame,
                                std::uint64_t extended_sequence,
                                const ChannelCalibration& cal);

}  // namespace pedalmap
