// Direction-prediction scoring: quantize mapped command channels against
// per-channel zero regions, match the sign pattern to a direction label, and
// aggregate accuracy per (direction, subject), per direction, and overall.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "pedalmap/labels.hpp"
#include "pedalmap/mapping.hpp"
#include "pedalmap/synth.hpp"

namespace pedalmap {

// Quantize one command vector: channels with |v| <= eps read 0 (inclusive),
// otherwise sign(v). All-zero -> Neutral; a pattern matching none of the 20
// direction rows (three or more active channels, or an unused pair) -> Mixed.
DirectionLabel classify_command(const CommandVector& cmd,
                                const Deadbands& bands);

// Full per-sample prediction for any model kind (kNN votes directly, other
// kinds map then classify with the model's own deadbands).
DirectionLabel predict_sample(const SensorFrame& frame,
                              const MappingModel& model);

struct TrialScore {
  DirectionLabel truth = DirectionLabel::Neutral;
  int total = 0;    // samples not predicted Neutral
  int correct = 0;  // predicted == truth
  int neutral = 0;  // samples predicted Neutral (excluded from total)
  bool defined() const { return total > 0; }  // all-neutral trials: undefined
  double accuracy() const { return defined() ? 100.0 * correct / total : 0.0; }
};

TrialScore score_trial(const Trial& trial, const MappingModel& model);

struct DirectionStats {
  double mean = 0.0;    // mean accuracy across subjects with defined cells
  double stdev = 0.0;   // population stdev across those subjects
  int subjects = 0;     // number of defined (direction, subject) cells
};

struct AccuracyReport {
  // Pooled counts per (direction, subject): repeated trials sum their
  // correct/total counts before the ratio is taken.
  std::map<DirectionLabel, std::map<int, TrialScore>> cells;
  std::map<DirectionLabel, DirectionStats> per_direction;
  double grand_mean = 0.0;  // unweighted mean of the per-direction means

  // Two-axis plane group means (mean over that plane's per-direction means;
  // 0 with count 0 when the plane's directions are absent).
  double xy_plane_mean = 0.0;
  double xz_plane_mean = 0.0;
  double yz_plane_mean = 0.0;
  int xy_plane_count = 0, xz_plane_count = 0, yz_plane_count = 0;

  int total = 0;    // pooled over everything
  int correct = 0;
  double pooled_accuracy() const {
    return total ? 100.0 * correct / total : 0.0;
  }
};

AccuracyReport evaluate_dataset(const Dataset& data, const MappingModel& model);

struct ModelComparison {
  std::vector<std::string> names;
  std::vector<AccuracyReport> reports;
};

// Throws std::invalid_argument when the reports' direction sets differ.
ModelComparison compare_models(const Dataset& data,
                               const std::vector<MappingModel>& models,
                               const std::vector<std::string>& names);

}  // namespace pedalmap
