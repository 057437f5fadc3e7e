// Command direction labels and their sign patterns on the four channels.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pedalmap {

// 8 single-axis directions, 12 two-axis diagonals, plus the two
// non-direction outcomes a classifier can produce.
enum class DirectionLabel {
  L, R, F, B, TU, TD, S, P,                          // single axis
  LF, RF, LB, RB,                                    // x-y diagonals
  LTU, RTU, LTD, RTD,                                // x-z diagonals
  FTU, BTU, FTD, BTD,                                // y-z diagonals
  Neutral,  // all channels inside the zero region
  Mixed,    // active channels match no direction pattern
};

inline constexpr int kNumDirections = 20;
inline constexpr int kNumLabels = 22;  // directions + Neutral + Mixed

// Channel indices: 0 fx, 1 fy, 2 fz, 3 m.
inline constexpr int kNumChannels = 4;

// Required sign per channel for each direction: -1, 0, +1.
// 0 means "inside the zero region".
std::array<int, kNumChannels> sign_pattern(DirectionLabel d);

const std::vector<DirectionLabel>& single_axis_directions();   // 8
const std::vector<DirectionLabel>& diagonal_directions();      // 12
const std::vector<DirectionLabel>& all_directions();           // 20

// The command channel a single-axis direction drives (fx for L/R, ...).
int channel_of(DirectionLabel d);
// The single-axis direction that drives `channel` positive (R, F, TU, S).
DirectionLabel positive_direction(int channel);

std::string to_string(DirectionLabel d);
std::optional<DirectionLabel> parse_direction(const std::string& name);

bool is_single_axis(DirectionLabel d);
bool is_diagonal(DirectionLabel d);

}  // namespace pedalmap
