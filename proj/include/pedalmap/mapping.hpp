// Sensor-to-command mappings: direct statics, blind-source-separation models
// calibrated per operator (one global unmixing, or two local ones on fixed
// sensor groups), and a nonparametric k-nearest-neighbour classifier.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pedalmap/labels.hpp"
#include "pedalmap/synth.hpp"

namespace pedalmap {

struct mapping_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- FastICA ----------------------------------------------------------------

struct IcaOptions {
  int max_iterations = 200;
  int restarts = 5;
  double tolerance = 1e-10;
  std::uint64_t seed = 1;
};

struct IcaResult {
  Eigen::VectorXd mean;       // d
  Eigen::MatrixXd whitening;  // k x d, z = whitening * (x - mean)
  Eigen::MatrixXd rotation;   // k x k orthonormal rows
  Eigen::MatrixXd unmixing;   // k x d = rotation * whitening
};

// Deflation FastICA with the tanh contrast on n x d samples (rows are
// samples). Components come out pairwise uncorrelated with unit variance on
// the input data. Throws mapping_error on rank deficiency (covariance rank
// below n_components), insufficient samples (n < 50 d), or non-convergence
// after all restarts (e.g. purely Gaussian input).
IcaResult fastica(const Eigen::MatrixXd& samples, int n_components,
                  const IcaOptions& opts = IcaOptions{});

// Permutation/scale-blind separation quality of a gain matrix g = unmixing *
// mixing: 0 for a perfect signed scaled permutation, larger is worse.
double amari_index(const Eigen::MatrixXd& g);

// --- models -----------------------------------------------------------------

enum class MappingKind { Statics, GlobalIca, LocalIca, Knn };
enum class KnnFeatureMode { RawForces, Wrench };

struct Deadbands {
  std::array<double, kNumChannels> eps{};  // zero-region half-width per channel
};

// Per-channel wiring of ICA components: which component feeds the channel,
// the sign that makes the channel's positive direction positive, and the
// scale that matches the statics wrench at the calibration extreme.
struct ChannelWiring {
  int component = -1;
  double sign = 1.0;
  double scale = 1.0;
};

struct IcaBlock {
  Eigen::VectorXd mean;
  Eigen::MatrixXd unmixing;                // k x group-size
  std::vector<int> sensors;                // sensor indices feeding the block
  std::vector<ChannelWiring> wiring;       // one per channel the block serves
  std::vector<int> channels;               // which command channels those are
};

struct KnnSample {
  Eigen::VectorXd features;
  DirectionLabel label = DirectionLabel::Neutral;
};

struct MappingModel {
  MappingKind kind = MappingKind::Statics;
  InterfaceGeometry geometry;
  SpringParams springs;
  std::vector<IcaBlock> blocks;  // 1 block (global) or 2 (local)
  int knn_k = 1;
  KnnFeatureMode knn_features = KnnFeatureMode::RawForces;
  std::vector<KnnSample> knn_samples;
  Deadbands bands;
};

// Calibration data: labeled single-axis trials, at least one per direction.
using CalibrationSet = std::vector<Trial>;

MappingModel make_statics_model(const InterfaceGeometry& g,
                                const SpringParams& sp);

// One 4-component separation on all eight cells, pooled over the whole
// calibration set. Component-to-channel assignment maximizes the mean
// absolute activation during each channel's own trials; throws
// mapping_error when two components claim a channel within a 5% margin.
// Signs are fixed on the positive-direction trials; scales pin the
// calibration extreme to the statics extreme so all models share units.
MappingModel calibrate_global_ica(const CalibrationSet& calib,
                                  const InterfaceGeometry& g,
                                  const SpringParams& sp,
                                  const IcaOptions& opts = IcaOptions{});

// Two 2-component separations on fixed groups: side cells 3..6 -> {fx, m},
// midline+pitch cells 1,2,7,8 -> {fy, fz}.
MappingModel calibrate_local_ica(const CalibrationSet& calib,
                                 const InterfaceGeometry& g,
                                 const SpringParams& sp,
                                 const IcaOptions& opts = IcaOptions{});

// Stores labeled samples (majority vote at query time). Samples whose
// statics wrench sits inside `bands` are dropped: they are indistinguishable
// near-rest frames. k must be odd and >= 1.
MappingModel fit_knn(const CalibrationSet& calib, int k, KnnFeatureMode mode,
                     const InterfaceGeometry& g, const SpringParams& sp,
                     const Deadbands& bands);

// Frame -> command channels (not defined for Knn models; use knn_predict).
CommandVector map_frame(const SensorFrame& frame, const MappingModel& model);

// Frame -> direction vote. Euclidean distance; ties broken by smaller mean
// distance, then by label order.
DirectionLabel knn_predict(const SensorFrame& frame, const MappingModel& model);
DirectionLabel knn_predict_features(const Eigen::VectorXd& features,
                                    const MappingModel& model);

Eigen::VectorXd knn_features(const SensorFrame& frame,
                             const MappingModel& model);

// Zero regions from the calibration set: for each channel, the largest
// off-axis |mapped value| seen anywhere in trials that do not drive that
// channel, scaled by safety_factor. Covers leakage and noise without
// clipping on-axis signal.
Deadbands estimate_deadbands(const CalibrationSet& calib,
                             const MappingModel& model,
                             double safety_factor = 1.0);

}  // namespace pedalmap
