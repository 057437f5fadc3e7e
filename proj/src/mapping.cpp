#include "pedalmap/mapping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "pedalmap/mechanics.hpp"
#include "seed_mix.hpp"

namespace pedalmap {
namespace {

double channel_value(const CommandVector& w, int channel) {
  switch (channel) {
    case 0: return w.fx;
    case 1: return w.fy;
    case 2: return w.fz;
    default: return w.m;
  }
}

void set_channel(CommandVector& w, int channel, double value) {
  switch (channel) {
    case 0: w.fx = value; break;
    case 1: w.fy = value; break;
    case 2: w.fz = value; break;
    default: w.m = value; break;
  }
}

Eigen::VectorXd frame_features(const SensorFrame& frame,
                               const std::vector<int>& sensors) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(sensors.size()));
  for (std::size_t i = 0; i < sensors.size(); ++i) x[i] = frame.f[sensors[i]];
  return x;
}

// Single-axis trials only; verifies every axis direction has coverage.
std::vector<const Trial*> fit_trials(const CalibrationSet& calib) {
  std::vector<const Trial*> out;
  std::array<bool, 8> seen{};
  const auto singles = single_axis_directions();
  for (const Trial& t : calib) {
    if (!is_single_axis(t.direction)) continue;
    out.push_back(&t);
    for (std::size_t i = 0; i < singles.size(); ++i)
      if (singles[i] == t.direction) seen[i] = true;
  }
  for (std::size_t i = 0; i < singles.size(); ++i)
    if (!seen[i])
      throw mapping_error("calibration set has no trial for direction " +
                          std::string(to_string(singles[i])));
  return out;
}

Eigen::MatrixXd pooled_matrix(const std::vector<const Trial*>& trials,
                              const std::vector<int>& sensors) {
  std::size_t n = 0;
  for (const Trial* t : trials) n += t->frames.size();
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(n),
                          static_cast<Eigen::Index>(sensors.size()));
  Eigen::Index row = 0;
  for (const Trial* t : trials)
    for (const SensorFrame& frame : t->frames)
      samples.row(row++) = frame_features(frame, sensors).transpose();
  return samples;
}

// One separation on `sensors`, wired to `channels` (one component each).
IcaBlock fit_block(const std::vector<const Trial*>& trials,
                   std::vector<int> sensors, std::vector<int> channels,
                   const InterfaceGeometry& g, const SpringParams& sp,
                   const IcaOptions& opts) {
  const int k = static_cast<int>(channels.size());
  const IcaResult ica = fastica(pooled_matrix(trials, sensors), k, opts);

  IcaBlock block;
  block.mean = ica.mean;
  block.unmixing = ica.unmixing;
  block.sensors = std::move(sensors);
  block.channels = std::move(channels);
  block.wiring.resize(block.channels.size());

  const auto outputs = [&](const SensorFrame& frame) {
    return Eigen::VectorXd(
        block.unmixing * (frame_features(frame, block.sensors) - block.mean));
  };

  // Assign each channel the component with the largest mean |activation|
  // during that channel's own trials; a second claimant within 5% means the
  // separation did not isolate the channel.
  for (std::size_t ci = 0; ci < block.channels.size(); ++ci) {
    const int channel = block.channels[ci];
    Eigen::VectorXd activation = Eigen::VectorXd::Zero(k);
    std::size_t count = 0;
    for (const Trial* t : trials) {
      if (channel_of(t->direction) != channel) continue;
      for (const SensorFrame& frame : t->frames) {
        activation += outputs(frame).cwiseAbs();
        ++count;
      }
    }
    if (count == 0) throw mapping_error("no calibration frames for a channel");
    activation /= static_cast<double>(count);

    int best = 0;
    for (int p = 1; p < k; ++p)
      if (activation[p] > activation[best]) best = p;
    for (int p = 0; p < k; ++p)
      if (p != best && activation[p] >= 0.95 * activation[best])
        throw mapping_error(
            "ambiguous component assignment: two components respond equally "
            "to one command channel");
    block.wiring[ci].component = best;
  }
  for (std::size_t i = 0; i < block.wiring.size(); ++i)
    for (std::size_t j = i + 1; j < block.wiring.size(); ++j)
      if (block.wiring[i].component == block.wiring[j].component)
        throw mapping_error(
            "ambiguous component assignment: one component claimed by two "
            "command channels");

  // Orient each component so the channel's positive direction reads
  // positive, then scale mapped output to the statics wrench so every model
  // reports commands in the same units.
  for (std::size_t ci = 0; ci < block.channels.size(); ++ci) {
    const int channel = block.channels[ci];
    const int comp = block.wiring[ci].component;
    const DirectionLabel positive = positive_direction(channel);

    double mean_positive = 0.0;
    std::size_t count = 0;
    double statics_extreme = 0.0;
    double component_extreme = 0.0;
    for (const Trial* t : trials) {
      if (channel_of(t->direction) != channel) continue;
      for (const SensorFrame& frame : t->frames) {
        const double y = outputs(frame)[comp];
        if (t->direction == positive) {
          mean_positive += y;
          ++count;
        }
        component_extreme = std::max(component_extreme, std::abs(y));
        statics_extreme = std::max(
            statics_extreme,
            std::abs(channel_value(resultant_wrench(frame, g, sp), channel)));
      }
    }
    if (count == 0 || component_extreme <= 0.0)
      throw mapping_error("component never activates on its own channel");
    block.wiring[ci].sign = (mean_positive >= 0.0) ? 1.0 : -1.0;
    block.wiring[ci].scale = statics_extreme / component_extreme;
  }
  return block;
}

}  // namespace

IcaResult fastica(const Eigen::MatrixXd& samples, int n_components,
                  const IcaOptions& opts) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  if (n_components < 1 || n_components > d)
    throw mapping_error("component count must be in [1, dimension]");
  if (n < 50 * d)
    throw mapping_error("insufficient samples: need at least 50 per sensor");

  IcaResult result;
  result.mean = samples.colwise().mean();
  const Eigen::MatrixXd centered = samples.rowwise() - result.mean.transpose();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success)
    throw mapping_error("covariance eigendecomposition failed");
  // Eigen reports eigenvalues in ascending order; keep the top n_components.
  const Eigen::VectorXd values = eig.eigenvalues();
  const double largest = values[d - 1];
  result.whitening.resize(n_components, d);
  for (int p = 0; p < n_components; ++p) {
    const Eigen::Index idx = d - 1 - p;
    if (largest <= 0.0 || values[idx] <= 0.0 ||
        values[idx] / largest < 1e-12)
      throw mapping_error(
          "covariance rank is below the requested component count");
    result.whitening.row(p) =
        eig.eigenvectors().col(idx).transpose() / std::sqrt(values[idx]);
  }

  // Whitened data, components as rows.
  const Eigen::MatrixXd z = result.whitening * centered.transpose();
  const double inv_n = 1.0 / static_cast<double>(n);

  result.rotation.resize(n_components, n_components);
  for (int p = 0; p < n_components; ++p) {
    bool converged = false;
    Eigen::VectorXd extracted;
    for (int restart = 0; restart < opts.restarts && !converged; ++restart) {
      std::mt19937_64 rng(
          detail::mix_seed(opts.seed, 64 * static_cast<std::uint64_t>(p) +
                                          static_cast<std::uint64_t>(restart)));
      Eigen::VectorXd w(n_components);
      for (int i = 0; i < n_components; ++i) w[i] = detail::normal01(rng);
      for (int j = 0; j < p; ++j)
        w -= result.rotation.row(j).dot(w) * result.rotation.row(j).transpose();
      if (w.norm() < 1e-9) continue;
      w.normalize();

      for (int iter = 0; iter < opts.max_iterations; ++iter) {
        const Eigen::VectorXd proj = z.transpose() * w;  // n
        const Eigen::VectorXd gz = proj.array().tanh();
        const double gprime_mean =
            (1.0 - gz.array().square()).mean();  // E[1 - tanh^2]
        Eigen::VectorXd next = (z * gz) * inv_n - gprime_mean * w;
        for (int j = 0; j < p; ++j)
          next -= result.rotation.row(j).dot(next) *
                  result.rotation.row(j).transpose();
        const double norm = next.norm();
        if (norm < 1e-12) break;  // collapsed into previous components
        next /= norm;
        const double delta =
            std::min((next - w).norm(), (next + w).norm());
        w = next;
        if (delta < opts.tolerance) {
          converged = true;
          extracted = w;
          break;
        }
      }
    }
    if (!converged)
      throw mapping_error(
          "separation did not converge: input has no independent "
          "non-Gaussian components");
    result.rotation.row(p) = extracted.transpose();
  }
  result.unmixing = result.rotation * result.whitening;
  return result;
}

double amari_index(const Eigen::MatrixXd& g) {
  const Eigen::Index k = g.rows();
  if (k != g.cols() || k < 2)
    throw mapping_error("gain matrix must be square with size >= 2");
  const Eigen::MatrixXd a = g.cwiseAbs();
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i)
    total += a.row(i).sum() / a.row(i).maxCoeff() - 1.0;
  for (Eigen::Index j = 0; j < k; ++j)
    total += a.col(j).sum() / a.col(j).maxCoeff() - 1.0;
  return total / (2.0 * static_cast<double>(k) * static_cast<double>(k - 1));
}

MappingModel make_statics_model(const InterfaceGeometry& g,
                                const SpringParams& sp) {
  MappingModel model;
  model.kind = MappingKind::Statics;
  model.geometry = g;
  model.springs = sp;
  return model;
}

MappingModel calibrate_global_ica(const CalibrationSet& calib,
                                  const InterfaceGeometry& g,
                                  const SpringParams& sp,
                                  const IcaOptions& opts) {
  const auto trials = fit_trials(calib);
  MappingModel model;
  model.kind = MappingKind::GlobalIca;
  model.geometry = g;
  model.springs = sp;
  model.blocks.push_back(
      fit_block(trials, {0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3}, g, sp, opts));
  return model;
}

MappingModel calibrate_local_ica(const CalibrationSet& calib,
                                 const InterfaceGeometry& g,
                                 const SpringParams& sp,
                                 const IcaOptions& opts) {
  const auto trials = fit_trials(calib);
  MappingModel model;
  model.kind = MappingKind::LocalIca;
  model.geometry = g;
  model.springs = sp;
  // Side cells carry lateral force and twist; midline + pitch cells carry
  // longitudinal force and the vertical-difference channel.
  model.blocks.push_back(fit_block(trials, {2, 3, 4, 5}, {0, 3}, g, sp, opts));
  model.blocks.push_back(fit_block(trials, {0, 1, 6, 7}, {1, 2}, g, sp, opts));
  return model;
}

CommandVector map_frame(const SensorFrame& frame, const MappingModel& model) {
  switch (model.kind) {
    case MappingKind::Statics:
      return resultant_wrench(frame, model.geometry, model.springs);
    case MappingKind::Knn:
      throw mapping_error(
          "map_frame is not defined for nearest-neighbour models");
    default:
      break;
  }
  CommandVector out;
  for (const IcaBlock& block : model.blocks) {
    const Eigen::VectorXd y =
        block.unmixing * (frame_features(frame, block.sensors) - block.mean);
    for (std::size_t i = 0; i < block.channels.size(); ++i) {
      const ChannelWiring& wire = block.wiring[i];
      set_channel(out, block.channels[i],
                  wire.sign * wire.scale * y[wire.component]);
    }
  }
  return out;
}

MappingModel fit_knn(const CalibrationSet& calib, int k, KnnFeatureMode mode,
                     const InterfaceGeometry& g, const SpringParams& sp,
                     const Deadbands& bands) {
  if (k < 1 || k % 2 == 0)
    throw mapping_error("neighbour count must be odd and at least 1");
  MappingModel model;
  model.kind = MappingKind::Knn;
  model.geometry = g;
  model.springs = sp;
  model.knn_k = k;
  model.knn_features = mode;
  model.bands = bands;
  for (const Trial& t : calib) {
    for (const SensorFrame& frame : t.frames) {
      const CommandVector w = resultant_wrench(frame, g, sp);
      bool in_band = true;
      for (int c = 0; c < kNumChannels; ++c)
        if (std::abs(channel_value(w, c)) > bands.eps[c]) in_band = false;
      if (in_band) continue;  // near-rest frame, indistinguishable from idle
      model.knn_samples.push_back(
          {knn_features(frame, model), t.direction});
    }
  }
  if (model.knn_samples.size() < static_cast<std::size_t>(k))
    throw mapping_error("fewer training samples than neighbours requested");
  return model;
}

Eigen::VectorXd knn_features(const SensorFrame& frame,
                             const MappingModel& model) {
  if (model.knn_features == KnnFeatureMode::RawForces) {
    Eigen::VectorXd x(kNumSensors);
    for (int i = 0; i < kNumSensors; ++i) x[i] = frame.f[i];
    return x;
  }
  const CommandVector w =
      resultant_wrench(frame, model.geometry, model.springs);
  Eigen::VectorXd x(kNumChannels);
  x << w.fx, w.fy, w.fz, w.m;
  return x;
}

DirectionLabel knn_predict_features(const Eigen::VectorXd& features,
                                    const MappingModel& model) {
  if (model.kind != MappingKind::Knn)
    throw mapping_error("model holds no nearest-neighbour samples");
  const std::size_t n = model.knn_samples.size();
  if (n < static_cast<std::size_t>(model.knn_k))
    throw mapping_error("fewer training samples than neighbours requested");

  std::vector<std::pair<double, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = {(model.knn_samples[i].features - features).norm(), i};
  std::partial_sort(order.begin(),
                    order.begin() + static_cast<std::ptrdiff_t>(model.knn_k),
                    order.end());

  // Majority vote; ties go to the label with the smaller mean distance,
  // then to enum order.
  std::array<int, kNumLabels> votes{};
  std::array<double, kNumLabels> distance_sum{};
  for (int i = 0; i < model.knn_k; ++i) {
    const auto idx = static_cast<int>(
        model.knn_samples[order[static_cast<std::size_t>(i)].second].label);
    votes[idx] += 1;
    distance_sum[idx] += order[static_cast<std::size_t>(i)].first;
  }
  int best = -1;
  for (int lbl = 0; lbl < kNumLabels; ++lbl) {
    if (votes[lbl] == 0) continue;
    if (best < 0) {
      best = lbl;
      continue;
    }
    const double mean_best = distance_sum[best] / votes[best];
    const double mean_lbl = distance_sum[lbl] / votes[lbl];
    if (votes[lbl] > votes[best] ||
        (votes[lbl] == votes[best] && mean_lbl < mean_best))
      best = lbl;
  }
  return static_cast<DirectionLabel>(best);
}

DirectionLabel knn_predict(const SensorFrame& frame,
                           const MappingModel& model) {
  if (model.kind != MappingKind::Knn)
    throw mapping_error("model holds no nearest-neighbour samples");
  // Gate near-rest frames to Neutral with the same statics bands used to
  // prune the training set, so rest frames never out-vote real commands.
  const CommandVector w =
      resultant_wrench(frame, model.geometry, model.springs);
  bool in_band = true;
  for (int c = 0; c < kNumChannels; ++c)
    if (std::abs(channel_value(w, c)) > model.bands.eps[c]) in_band = false;
  if (in_band) return DirectionLabel::Neutral;
  return knn_predict_features(knn_features(frame, model), model);
}

Deadbands estimate_deadbands(const CalibrationSet& calib,
                             const MappingModel& model, double safety_factor) {
  Deadbands bands;
  for (const Trial& t : calib) {
    const auto pattern = sign_pattern(t.direction);
    for (const SensorFrame& frame : t.frames) {
      const CommandVector v =
          (model.kind == MappingKind::Knn)
              ? resultant_wrench(frame, model.geometry, model.springs)
              : map_frame(frame, model);
      for (int c = 0; c < kNumChannels; ++c)
        if (pattern[c] == 0)
          bands.eps[c] = std::max(bands.eps[c],
                                  std::abs(channel_value(v, c)));
    }
  }
  for (double& e : bands.eps) e *= safety_factor;
  return bands;
}

}  // namespace pedalmap
