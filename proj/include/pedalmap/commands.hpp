// In-process implementations of the CLI subcommands. The CLI binary is a
// thin argument-parsing wrapper over these, and tests drive the same
// functions directly so a scripted pipeline and the shipped tool cannot
// drift apart.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pedalmap/textio.hpp"

namespace pedalmap {

struct SimulateOptions {
  std::filesystem::path config_file;  // empty -> defaults
  std::filesystem::path out_dir;
  int subjects = 1;
  int trials_per_direction = 1;
  bool diagonals = true;   // include two-axis directions
  bool noiseless = false;  // override config noise with NoiseSpec::none()
  std::uint64_t seed = 1;
};
void run_simulate(const SimulateOptions& opts);

struct WorkspaceOptions {
  std::filesystem::path config_file;
  std::filesystem::path out_file;
  int yaw_steps = 11;
  int samples = 20000;
  std::uint64_t seed = 1;
};
void run_workspace(const WorkspaceOptions& opts);

struct CalibrateOptions {
  std::filesystem::path config_file;
  std::filesystem::path data_dir;
  std::filesystem::path model_file;
  // Unset fields fall back to the config's mapping section.
  std::optional<std::string> kind;  // statics | global-ica | local-ica | knn
  std::optional<int> knn_k;
  std::optional<std::string> knn_features;  // raw | wrench
  std::optional<double> deadband_factor;
  std::optional<std::uint64_t> seed;  // separation seed
};
void run_calibrate(const CalibrateOptions& opts);

struct EvaluateOptions {
  std::filesystem::path data_dir;
  std::filesystem::path model_file;
  std::filesystem::path report_file;
};
void run_evaluate(const EvaluateOptions& opts);

struct CompareOptions {
  std::filesystem::path data_dir;
  std::vector<std::filesystem::path> model_files;
  std::filesystem::path report_file;
};
void run_compare(const CompareOptions& opts);

struct PredictOptions {
  std::filesystem::path trial_csv;
  std::filesystem::path model_file;
  std::filesystem::path out_file;  // per-sample predictions CSV
};
void run_predict(const PredictOptions& opts);

struct ParseFramesOptions {
  std::filesystem::path raw_file;  // binary stream
  std::filesystem::path out_csv;   // decoded sensor frames
};
// Returns a diagnostics summary (also printed by the CLI wrapper).
std::string run_parse_frames(const ParseFramesOptions& opts);

struct FkOptions {
  std::filesystem::path config_file;
  std::vector<double> guide_lengths;  // six values, meters
};
// Returns the report text (also printed by the CLI wrapper).
std::string run_fk(const FkOptions& opts);

}  // namespace pedalmap
