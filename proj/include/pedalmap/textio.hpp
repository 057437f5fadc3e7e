// Deterministic text formats: trial CSV, dataset directories with a JSON
// manifest, JSON config and model files (digest-checked), and plain-text
// reports. Every writer is byte-stable for identical inputs so pipeline
// reruns can be compared with a straight file diff.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pedalmap/eval.hpp"
#include "pedalmap/mapping.hpp"
#include "pedalmap/synth.hpp"
#include "pedalmap/workspace.hpp"

namespace pedalmap {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest text that round-trips the exact double ("%.15g" then widened only
// if needed); used by every CSV/report writer.
std::string format_double(double value);

// FNV-1a 64-bit over a byte string; model files embed it as a tamper check.
std::uint64_t fnv1a64(const std::string& bytes);

// --- trial CSV ---------------------------------------------------------------
// Columns: t,f1..f8 and, when truth is present, x,y,yaw,pitch,fx,fy,fz,m.
std::string trial_to_csv(const Trial& trial);
Trial trial_from_csv(const std::string& csv);

// --- dataset directory --------------------------------------------------------
// <dir>/manifest.json lists trials; each trial lives in trial_<idx>.csv.
void save_dataset(const Dataset& data, const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

// --- config -------------------------------------------------------------------
struct MappingConfig {
  std::string kind = "statics";      // statics | global-ica | local-ica | knn
  int knn_k = 3;                     // odd, >= 1
  std::string knn_features = "raw";  // raw | wrench
  IcaOptions ica;
  double deadband_factor = 1.0;
};

struct Config {
  InterfaceGeometry geometry;
  SpringParams springs;
  NoiseSpec noise;
  MappingConfig mapping;
};

// Canonical rig, no noise, statics mapping.
Config default_config();

std::string config_to_json(const Config& config);
Config config_from_json(const std::string& json_text);
void save_config(const Config& config, const std::filesystem::path& file);
Config load_config(const std::filesystem::path& file);

// --- model --------------------------------------------------------------------
std::string mapping_kind_name(MappingKind kind);
MappingKind mapping_kind_from_name(const std::string& name);

std::string model_to_json(const MappingModel& model);
MappingModel model_from_json(const std::string& json_text);
void save_model(const MappingModel& model, const std::filesystem::path& file);
MappingModel load_model(const std::filesystem::path& file);

// --- reports ------------------------------------------------------------------
std::string accuracy_report_text(const AccuracyReport& report,
                                 const std::string& model_name);
std::string comparison_report_text(const ModelComparison& comparison);
std::string workspace_report_text(const std::vector<WorkspaceSlice>& sweep);

std::string read_text_file(const std::filesystem::path& file);
void write_text_file(const std::filesystem::path& file,
                     const std::string& content);

}  // namespace pedalmap
