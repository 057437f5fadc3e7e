#include "pedalmap/labels.hpp"

namespace pedalmap {
namespace {

using A4 = std::array<int, kNumChannels>;

}  // namespace

std::array<int, kNumChannels> sign_pattern(DirectionLabel d) {
  switch (d) {
    case DirectionLabel::L: return A4{-1, 0, 0, 0};
    case DirectionLabel::R: return A4{+1, 0, 0, 0};
    case DirectionLabel::F: return A4{0, +1, 0, 0};
    case DirectionLabel::B: return A4{0, -1, 0, 0};
    case DirectionLabel::TU: return A4{0, 0, +1, 0};
    case DirectionLabel::TD: return A4{0, 0, -1, 0};
    case DirectionLabel::S: return A4{0, 0, 0, +1};
    case DirectionLabel::P: return A4{0, 0, 0, -1};
    case DirectionLabel::LF: return A4{-1, +1, 0, 0};
    case DirectionLabel::RF: return A4{+1, +1, 0, 0};
    case DirectionLabel::LB: return A4{-1, -1, 0, 0};
    case DirectionLabel::RB: return A4{+1, -1, 0, 0};
    case DirectionLabel::LTU: return A4{-1, 0, +1, 0};
    case DirectionLabel::RTU: return A4{+1, 0, +1, 0};
    case DirectionLabel::LTD: return A4{-1, 0, -1, 0};
    case DirectionLabel::RTD: return A4{+1, 0, -1, 0};
    case DirectionLabel::FTU: return A4{0, +1, +1, 0};
    case DirectionLabel::BTU: return A4{0, -1, +1, 0};
    case DirectionLabel::FTD: return A4{0, +1, -1, 0};
    case DirectionLabel::BTD: return A4{0, -1, -1, 0};
    case DirectionLabel::Neutral:
    case DirectionLabel::Mixed: return A4{0, 0, 0, 0};
  }
  return A4{0, 0, 0, 0};
}

const std::vector<DirectionLabel>& single_axis_directions() {
  static const std::vector<DirectionLabel> v{
      DirectionLabel::L,  DirectionLabel::R,  DirectionLabel::F,
      DirectionLabel::B,  DirectionLabel::TU, DirectionLabel::TD,
      DirectionLabel::S,  DirectionLabel::P};
  return v;
}

const std::vector<DirectionLabel>& diagonal_directions() {
  static const std::vector<DirectionLabel> v{
      DirectionLabel::LF,  DirectionLabel::RF,  DirectionLabel::LB,
      DirectionLabel::RB,  DirectionLabel::LTU, DirectionLabel::RTU,
      DirectionLabel::LTD, DirectionLabel::RTD, DirectionLabel::FTU,
      DirectionLabel::BTU, DirectionLabel::FTD, DirectionLabel::BTD};
  return v;
}

const std::vector<DirectionLabel>& all_directions() {
  static const std::vector<DirectionLabel> v = [] {
    std::vector<DirectionLabel> out = single_axis_directions();
    const auto& diag = diagonal_directions();
    out.insert(out.end(), diag.begin(), diag.end());
    return out;
  }();
  return v;
}

int channel_of(DirectionLabel d) {
  switch (d) {
    case DirectionLabel::L:
    case DirectionLabel::R: return 0;
    case DirectionLabel::F:
    case DirectionLabel::B: return 1;
    case DirectionLabel::TU:
    case DirectionLabel::TD: return 2;
    case DirectionLabel::S:
    case DirectionLabel::P: return 3;
    default: return -1;
  }
}

DirectionLabel positive_direction(int channel) {
  switch (channel) {
    case 0: return DirectionLabel::R;
    case 1: return DirectionLabel::F;
    case 2: return DirectionLabel::TU;
    default: return DirectionLabel::S;
  }
}

std::string to_string(DirectionLabel d) {
  switch (d) {
    case DirectionLabel::L: return "L";
    case DirectionLabel::R: return "R";
    case DirectionLabel::F: return "F";
    case DirectionLabel::B: return "B";
    case DirectionLabel::TU: return "TU";
    case DirectionLabel::TD: return "TD";
    case DirectionLabel::S: return "S";
    case DirectionLabel::P: return "P";
    case DirectionLabel::LF: return "LF";
    case DirectionLabel::RF: return "RF";
    case DirectionLabel::LB: return "LB";
    case DirectionLabel::RB: return "RB";
    case DirectionLabel::LTU: return "LTU";
    case DirectionLabel::RTU: return "RTU";
    case DirectionLabel::LTD: return "LTD";
    case DirectionLabel::RTD: return "RTD";
    case DirectionLabel::FTU: return "FTU";
    case DirectionLabel::BTU: return "BTU";
    case DirectionLabel::FTD: return "FTD";
    case DirectionLabel::BTD: return "BTD";
    case DirectionLabel::Neutral: return "Neutral";
    case DirectionLabel::Mixed: return "Mixed";
  }
  return "?";
}

std::optional<DirectionLabel> parse_direction(const std::string& name) {
  for (DirectionLabel d : all_directions())
    if (to_string(d) == name) return d;
  if (name == "Neutral") return DirectionLabel::Neutral;
  if (name == "Mixed") return DirectionLabel::Mixed;
  return std::nullopt;
}

bool is_single_axis(DirectionLabel d) { return channel_of(d) >= 0; }

bool is_diagonal(DirectionLabel d) {
  const auto& diag = diagonal_directions();
  for (DirectionLabel x : diag)
    if (x == d) return true;
  return false;
}

}  // namespace pedalmap
