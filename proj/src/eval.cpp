#include "pedalmap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pedalmap {
namespace {

int quantize(double value, double eps) {
  if (std::abs(value) <= eps) return 0;
  return value > 0.0 ? 1 : -1;
}

bool plane_member(DirectionLabel d, int first_channel, int second_channel) {
  const auto pattern = sign_pattern(d);
  if (pattern[first_channel] == 0 || pattern[second_channel] == 0)
    return false;
  for (int c = 0; c < kNumChannels; ++c)
    if (c != first_channel && c != second_channel && pattern[c] != 0)
      return false;
  return true;
}

}  // namespace

DirectionLabel classify_command(const CommandVector& cmd,
                                const Deadbands& bands) {
  const std::array<int, kNumChannels> q{
      quantize(cmd.fx, bands.eps[0]), quantize(cmd.fy, bands.eps[1]),
      quantize(cmd.fz, bands.eps[2]), quantize(cmd.m, bands.eps[3])};
  if (q[0] == 0 && q[1] == 0 && q[2] == 0 && q[3] == 0)
    return DirectionLabel::Neutral;
  for (DirectionLabel d : all_directions())
    if (sign_pattern(d) == q) return d;
  return DirectionLabel::Mixed;
}

DirectionLabel predict_sample(const SensorFrame& frame,
                              const MappingModel& model) {
  if (model.kind == MappingKind::Knn) return knn_predict(frame, model);
  return classify_command(map_frame(frame, model), model.bands);
}

TrialScore score_trial(const Trial& trial, const MappingModel& model) {
  TrialScore score;
  score.truth = trial.direction;
  for (const SensorFrame& frame : trial.frames) {
    const DirectionLabel predicted = predict_sample(frame, model);
    if (predicted == DirectionLabel::Neutral) {
      ++score.neutral;
      continue;
    }
    ++score.total;
    if (predicted == trial.direction) ++score.correct;
  }
  return score;
}

AccuracyReport evaluate_dataset(const Dataset& data,
                                const MappingModel& model) {
  AccuracyReport report;
  for (const Trial& trial : data.trials) {
    const TrialScore score = score_trial(trial, model);
    TrialScore& cell = report.cells[trial.direction][trial.subject];
    cell.truth = trial.direction;
    cell.total += score.total;
    cell.correct += score.correct;
    cell.neutral += score.neutral;
    report.total += score.total;
    report.correct += score.correct;
  }

  for (const auto& [direction, subjects] : report.cells) {
    DirectionStats stats;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [subject, cell] : subjects) {
      if (!cell.defined()) continue;  // all-neutral cells carry no evidence
      const double acc = cell.accuracy();
      sum += acc;
      sum_sq += acc * acc;
      ++stats.subjects;
    }
    if (stats.subjects > 0) {
      stats.mean = sum / stats.subjects;
      const double var =
          std::max(0.0, sum_sq / stats.subjects - stats.mean * stats.mean);
      stats.stdev = std::sqrt(var);
    }
    report.per_direction[direction] = stats;
  }

  double grand_sum = 0.0;
  int grand_count = 0;
  double xy_sum = 0.0, xz_sum = 0.0, yz_sum = 0.0;
  for (const auto& [direction, stats] : report.per_direction) {
    if (stats.subjects == 0) continue;
    grand_sum += stats.mean;
    ++grand_count;
    if (plane_member(direction, 0, 1)) {
      xy_sum += stats.mean;
      ++report.xy_plane_count;
    } else if (plane_member(direction, 0, 2)) {
      xz_sum += stats.mean;
      ++report.xz_plane_count;
    } else if (plane_member(direction, 1, 2)) {
      yz_sum += stats.mean;
      ++report.yz_plane_count;
    }
  }
  if (grand_count > 0) report.grand_mean = grand_sum / grand_count;
  if (report.xy_plane_count > 0)
    report.xy_plane_mean = xy_sum / report.xy_plane_count;
  if (report.xz_plane_count > 0)
    report.xz_plane_mean = xz_sum / report.xz_plane_count;
  if (report.yz_plane_count > 0)
    report.yz_plane_mean = yz_sum / report.yz_plane_count;
  return report;
}

ModelComparison compare_models(const Dataset& data,
                               const std::vector<MappingModel>& models,
                               const std::vector<std::string>& names) {
  if (models.size() != names.size())
    throw std::invalid_argument("one name per model is required");
  ModelComparison comparison;
  comparison.names = names;
  if (models.empty()) return comparison;
  comparison.reports.reserve(models.size());
  for (const MappingModel& model : models)
    comparison.reports.push_back(evaluate_dataset(data, model));

  // Grand means are only comparable when every model produced a defined
  // score for the same directions (a model that reads a direction as
  // all-Neutral contributes no mean there).
  const auto defined_set = [](const AccuracyReport& r) {
    std::vector<DirectionLabel> set;
    for (const auto& [direction, stats] : r.per_direction)
      if (stats.subjects > 0) set.push_back(direction);
    return set;
  };
  const auto reference = defined_set(comparison.reports[0]);
  for (std::size_t i = 1; i < comparison.reports.size(); ++i)
    if (defined_set(comparison.reports[i]) != reference)
      throw std::invalid_argument(
          "models scored different direction sets; comparison would be "
          "meaningless");
  return comparison;
}

}  // namespace pedalmap
