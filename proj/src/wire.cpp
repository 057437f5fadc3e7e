#include "pedalmap/wire.hpp"

#include <algorithm>

namespace pedalmap {
namespace {

std::uint8_t xor_bytes(const std::uint8_t* data, std::size_t count) {
  std::uint8_t x = 0;
  for (std::size_t i = 0; i < count; ++i) x ^= data[i];
  return x;
}

}  // namespace

std::array<std::uint8_t, kWireFrameSize> encode_frame(const RawFrame& frame) {
  std::array<std::uint8_t, kWireFrameSize> bytes{};
  bytes[0] = kSync0;
  bytes[1] = kSync1;
  bytes[2] = frame.sequence;
  for (int i = 0; i < kNumSensors; ++i) {
    bytes[3 + 2 * i] = static_cast<std::uint8_t>(frame.counts[i] & 0xFF);
    bytes[4 + 2 * i] = static_cast<std::uint8_t>(frame.counts[i] >> 8);
  }
  bytes[kWireFrameSize - 1] = xor_bytes(bytes.data(), kWireFrameSize - 1);
  return bytes;
}

std::vector<RawFrame> FrameDecoder::feed(const std::uint8_t* data,
                                         std::size_t size) {
  buffer_.insert(buffer_.end(), data, data + size);
  std::vector<RawFrame> out;
  std::size_t pos = 0;
  const std::size_t n = buffer_.size();

  while (true) {
    // Hunt for the sync pair; everything passed over is resync loss.
    while (pos + 1 < n &&
           !(buffer_[pos] == kSync0 && buffer_[pos + 1] == kSync1)) {
      ++pos;
      ++diag_.bytes_skipped;
    }
    if (pos + kWireFrameSize > n) break;  // incomplete frame: wait for bytes

    const std::uint8_t* frame_bytes = buffer_.data() + pos;
    if (xor_bytes(frame_bytes, kWireFrameSize - 1) !=
        frame_bytes[kWireFrameSize - 1]) {
      // Resume one byte past the sync match so a corrupted frame can never
      // swallow a genuine frame that starts inside it.
      ++diag_.checksum_failures;
      ++pos;
      ++diag_.bytes_skipped;
      continue;
    }

    RawFrame frame;
    frame.sequence = frame_bytes[2];
    for (int i = 0; i < kNumSensors; ++i)
      frame.counts[i] = static_cast<std::uint16_t>(
          frame_bytes[3 + 2 * i] |
          (static_cast<std::uint16_t>(frame_bytes[4 + 2 * i]) << 8));

    if (!have_first_) {
      have_first_ = true;
      extended_ = 0;
    } else {
      const std::uint8_t delta =
          static_cast<std::uint8_t>(frame.sequence - last_seq_);
      if (delta != 1) ++diag_.sequence_gaps;
      extended_ += (delta == 0) ? 256 : delta;
    }
    last_seq_ = frame.sequence;
    ++diag_.frames;
    out.push_back(frame);
    pos += kWireFrameSize;
  }

  buffer_.erase(buffer_.begin(),
                buffer_.begin() + static_cast<std::ptrdiff_t>(pos));
  return out;
}

std::vector<RawFrame> FrameDecoder::feed(const std::vector<std::uint8_t>& data) {
  return feed(data.data(), data.size());
}

ChannelCalibration ChannelCalibration::defaults() {
  ChannelCalibration cal;
  // Full 16-bit span covers the load cells' rated range (about 111.2 N).
  for (int i = 0; i < kNumSensors; ++i) {
    cal.gain[i] = 111.2 / 65535.0;
    cal.offset[i] = 0.0;
    cal.saturation[i] = 65535;
  }
  return cal;
}

CalibratedFrame counts_to_frame(const RawFrame& frame,
                                std::uint64_t extended_sequence,
                                const ChannelCalibration& cal) {
  CalibratedFrame out;
  out.frame.t = static_cast<double>(extended_sequence) * 0.02;
  for (int i = 0; i < kNumSensors; ++i) {
    const double count = static_cast<double>(frame.counts[i]);
    out.underflow[i] = count < cal.offset[i];
    out.saturated[i] = frame.counts[i] >= cal.saturation[i];
    out.frame.f[i] = std::max(0.0, cal.gain[i] * (count - cal.offset[i]));
  }
  return out;
}

}  // namespace pedalmap
