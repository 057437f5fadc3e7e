#include "pedalmap/commands.hpp"

#include <string>
#include <vector>

#include "pedalmap/eval.hpp"
#include "pedalmap/mapping.hpp"
#include "pedalmap/wire.hpp"
#include "pedalmap/workspace.hpp"

namespace pedalmap {
namespace {

Config config_or_default(const std::filesystem::path& file) {
  return file.empty() ? default_config() : load_config(file);
}

KnnFeatureMode feature_mode(const std::string& name) {
  if (name == "raw") return KnnFeatureMode::RawForces;
  if (name == "wrench") return KnnFeatureMode::Wrench;
  throw io_error("unknown feature mode: '" + name + "' (raw or wrench)");
}

}  // namespace

void run_simulate(const SimulateOptions& opts) {
  const Config config = config_or_default(opts.config_file);
  const NoiseSpec noise = opts.noiseless ? NoiseSpec::none() : config.noise;
  const std::vector<DirectionLabel>& directions =
      opts.diagonals ? all_directions() : single_axis_directions();
  const Dataset data =
      generate_dataset(opts.subjects, opts.trials_per_direction, directions,
                       noise, config.geometry, config.springs, opts.seed);
  save_dataset(data, opts.out_dir);
}

void run_workspace(const WorkspaceOptions& opts) {
  const Config config = config_or_default(opts.config_file);
  const auto sweep =
      yaw_sweep(opts.yaw_steps, static_cast<std::uint64_t>(opts.samples),
                config.geometry, config.springs, opts.seed);
  write_text_file(opts.out_file, workspace_report_text(sweep));
}

void run_calibrate(const CalibrateOptions& opts) {
  const Config config = config_or_default(opts.config_file);
  MappingConfig mc = config.mapping;
  if (opts.kind) mc.kind = *opts.kind;
  if (opts.knn_k) mc.knn_k = *opts.knn_k;
  if (opts.knn_features) mc.knn_features = *opts.knn_features;
  if (opts.deadband_factor) mc.deadband_factor = *opts.deadband_factor;
  if (opts.seed) mc.ica.seed = *opts.seed;

  const Dataset data = load_dataset(opts.data_dir);
  const CalibrationSet& calib = data.trials;
  const InterfaceGeometry& g = config.geometry;
  const SpringParams& sp = config.springs;

  MappingModel model;
  const MappingKind kind = mapping_kind_from_name(mc.kind);
  switch (kind) {
    case MappingKind::Statics:
      model = make_statics_model(g, sp);
      break;
    case MappingKind::GlobalIca:
      model = calibrate_global_ica(calib, g, sp, mc.ica);
      break;
    case MappingKind::LocalIca:
      model = calibrate_local_ica(calib, g, sp, mc.ica);
      break;
    case MappingKind::Knn: {
      // Rest gating uses statics-wrench zero regions from the same data.
      const MappingModel statics = make_statics_model(g, sp);
      const Deadbands bands =
          estimate_deadbands(calib, statics, mc.deadband_factor);
      model = fit_knn(calib, mc.knn_k, feature_mode(mc.knn_features), g, sp,
                      bands);
      break;
    }
  }
  if (kind != MappingKind::Knn)
    model.bands = estimate_deadbands(calib, model, mc.deadband_factor);
  save_model(model, opts.model_file);
}

void run_evaluate(const EvaluateOptions& opts) {
  const MappingModel model = load_model(opts.model_file);
  const Dataset data = load_dataset(opts.data_dir);
  const AccuracyReport report = evaluate_dataset(data, model);
  write_text_file(opts.report_file,
                  accuracy_report_text(report, mapping_kind_name(model.kind)));
}

void run_compare(const CompareOptions& opts) {
  const Dataset data = load_dataset(opts.data_dir);
  std::vector<MappingModel> models;
  std::vector<std::string> names;
  for (const auto& file : opts.model_files) {
    models.push_back(load_model(file));
    names.push_back(file.stem().string());
  }
  const ModelComparison comparison = compare_models(data, models, names);
  write_text_file(opts.report_file, comparison_report_text(comparison));
}

void run_predict(const PredictOptions& opts) {
  const MappingModel model = load_model(opts.model_file);
  const Trial trial = trial_from_csv(read_text_file(opts.trial_csv));
  std::string out = "t,fx,fy,fz,m,label\n";
  for (const SensorFrame& frame : trial.frames) {
    CommandVector cmd;
    DirectionLabel label = DirectionLabel::Neutral;
    if (model.kind == MappingKind::Knn) {
      // The vote is the prediction; channels report the statics wrench the
      // rest gate works from.
      cmd = resultant_wrench(frame, model.geometry, model.springs);
      label = knn_predict(frame, model);
    } else {
      cmd = map_frame(frame, model);
      label = classify_command(cmd, model.bands);
    }
    out += format_double(frame.t) + "," + format_double(cmd.fx) + "," +
           format_double(cmd.fy) + "," + format_double(cmd.fz) + "," +
           format_double(cmd.m) + "," + to_string(label) + "\n";
  }
  write_text_file(opts.out_file, out);
}

std::string run_parse_frames(const ParseFramesOptions& opts) {
  const std::string bytes = read_text_file(opts.raw_file);
  FrameDecoder decoder;
  const auto frames = decoder.feed(
      reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());

  const ChannelCalibration cal = ChannelCalibration::defaults();
  Trial trial;
  bool first = true;
  std::uint8_t last_seq = 0;
  std::uint64_t extended = 0;
  for (const RawFrame& raw : frames) {
    if (first) {
      first = false;
    } else {
      const std::uint8_t delta =
          static_cast<std::uint8_t>(raw.sequence - last_seq);
      extended += (delta == 0) ? 256 : delta;
    }
    last_seq = raw.sequence;
    trial.frames.push_back(counts_to_frame(raw, extended, cal).frame);
  }
  write_text_file(opts.out_csv, trial_to_csv(trial));

  const StreamDiagnostics& d = decoder.diagnostics();
  std::string summary = "frames: " + std::to_string(d.frames) + "\n";
  summary += "checksum_failures: " + std::to_string(d.checksum_failures) + "\n";
  summary += "bytes_skipped: " + std::to_string(d.bytes_skipped) + "\n";
  summary += "sequence_gaps: " + std::to_string(d.sequence_gaps) + "\n";
  return summary;
}

std::string run_fk(const FkOptions& opts) {
  const Config config = config_or_default(opts.config_file);
  if (opts.guide_lengths.size() != kNumSprings)
    throw io_error("fk needs exactly " + std::to_string(kNumSprings) +
                   " guide lengths");
  std::array<double, kNumSprings> lengths{};
  for (int i = 0; i < kNumSprings; ++i) lengths[i] = opts.guide_lengths[i];

  const Pose pose = forward_pose_robust(lengths, config.geometry);
  const SpringForces forces = spring_forces(lengths, config.springs);
  SensorFrame frame;
  for (int i = 0; i < kNumSprings; ++i) frame.f[i] = forces.force[i];
  frame.f[6] = config.springs.pitch_preload_toe;
  frame.f[7] = config.springs.pitch_preload_heel;
  const CommandVector w =
      resultant_wrench(frame, config.geometry, config.springs);

  std::string out = "pose: x=" + format_double(pose.x) +
                    " y=" + format_double(pose.y) +
                    " yaw=" + format_double(pose.yaw) +
                    " pitch=" + format_double(pose.pitch) + "\n";
  out += "wrench: fx=" + format_double(w.fx) + " fy=" + format_double(w.fy) +
         " fz=" + format_double(w.fz) + " m=" + format_double(w.m) + "\n";
  return out;
}

}  // namespace pedalmap
