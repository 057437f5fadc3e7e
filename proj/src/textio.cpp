#include "pedalmap/textio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "pedalmap/geometry.hpp"

namespace pedalmap {
namespace {

using nlohmann::json;

constexpr int kConfigVersion = 1;
constexpr int kModelVersion = 1;
constexpr int kDatasetVersion = 1;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw io_error(where + ": not a number: '" + text + "'");
  return value;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io_error(what + ": " + e.what());
  }
}

double jget(const json& j, const char* key, double current) {
  if (!j.contains(key)) return current;
  if (!j.at(key).is_number())
    throw io_error(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

template <std::size_t N>
json to_json(const std::array<double, N>& a) {
  json out = json::array();
  for (double v : a) out.push_back(v);
  return out;
}

template <std::size_t N>
void from_json_array(const json& j, const char* key,
                     std::array<double, N>& out) {
  if (!j.contains(key)) return;
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != N)
    throw io_error(std::string("field '") + key + "' must be an array of " +
                   std::to_string(N) + " numbers");
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i].get<double>();
}

json anchors_json(const std::array<Vec2, kNumSprings>& anchors) {
  json out = json::array();
  for (const Vec2& v : anchors) out.push_back(json::array({v.x, v.y}));
  return out;
}

void anchors_from_json(const json& j, const char* key,
                       std::array<Vec2, kNumSprings>& out) {
  if (!j.contains(key)) return;
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != kNumSprings)
    throw io_error(std::string("field '") + key + "' must list " +
                   std::to_string(kNumSprings) + " points");
  for (int i = 0; i < kNumSprings; ++i) {
    out[i].x = a[i].at(0).get<double>();
    out[i].y = a[i].at(1).get<double>();
  }
}

json geometry_json(const InterfaceGeometry& g) {
  json j;
  j["base_length"] = g.base_length;
  j["base_width"] = g.base_width;
  j["mobile_length"] = g.mobile_length;
  j["mobile_width"] = g.mobile_width;
  j["side_spacing_base"] = g.side_spacing_base;
  j["side_spacing_mobile"] = g.side_spacing_mobile;
  j["anchor_base"] = anchors_json(g.anchor_base);
  j["anchor_mobile"] = anchors_json(g.anchor_mobile);
  j["pitch_lever"] = g.pitch_lever;
  j["x_max"] = g.x_max;
  j["y_max"] = g.y_max;
  j["yaw_max"] = g.yaw_max;
  j["pitch_max"] = g.pitch_max;
  return j;
}

InterfaceGeometry geometry_from_json(const json& j, InterfaceGeometry g) {
  g.base_length = jget(j, "base_length", g.base_length);
  g.base_width = jget(j, "base_width", g.base_width);
  g.mobile_length = jget(j, "mobile_length", g.mobile_length);
  g.mobile_width = jget(j, "mobile_width", g.mobile_width);
  g.side_spacing_base = jget(j, "side_spacing_base", g.side_spacing_base);
  g.side_spacing_mobile = jget(j, "side_spacing_mobile", g.side_spacing_mobile);
  anchors_from_json(j, "anchor_base", g.anchor_base);
  anchors_from_json(j, "anchor_mobile", g.anchor_mobile);
  g.pitch_lever = jget(j, "pitch_lever", g.pitch_lever);
  g.x_max = jget(j, "x_max", g.x_max);
  g.y_max = jget(j, "y_max", g.y_max);
  g.yaw_max = jget(j, "yaw_max", g.yaw_max);
  g.pitch_max = jget(j, "pitch_max", g.pitch_max);
  return g;
}

json springs_json(const SpringParams& sp) {
  json j;
  j["stiffness"] = to_json(sp.stiffness);
  j["free_length"] = sp.free_length;
  j["home_deflection"] = sp.home_deflection;
  j["max_deflection"] = sp.max_deflection;
  j["home_guide_length"] = to_json(sp.home_guide_length);
  j["pretension"] = to_json(sp.pretension);
  j["torsion_stiffness"] = sp.torsion_stiffness;
  j["pitch_preload_toe"] = sp.pitch_preload_toe;
  j["pitch_preload_heel"] = sp.pitch_preload_heel;
  return j;
}

SpringParams springs_from_json(const json& j, SpringParams sp) {
  from_json_array(j, "stiffness", sp.stiffness);
  sp.free_length = jget(j, "free_length", sp.free_length);
  sp.home_deflection = jget(j, "home_deflection", sp.home_deflection);
  sp.max_deflection = jget(j, "max_deflection", sp.max_deflection);
  from_json_array(j, "home_guide_length", sp.home_guide_length);
  from_json_array(j, "pretension", sp.pretension);
  sp.torsion_stiffness = jget(j, "torsion_stiffness", sp.torsion_stiffness);
  sp.pitch_preload_toe = jget(j, "pitch_preload_toe", sp.pitch_preload_toe);
  sp.pitch_preload_heel = jget(j, "pitch_preload_heel", sp.pitch_preload_heel);
  return sp;
}

json noise_json(const NoiseSpec& n) {
  json j;
  j["sigma"] = n.sigma;
  json rows = json::array();
  for (const auto& row : n.coupling) {
    json r = json::array();
    for (double v : row) r.push_back(v);
    rows.push_back(r);
  }
  j["coupling"] = rows;
  j["coupling_trial_jitter"] = n.coupling_trial_jitter;
  j["tremor_amp"] = n.tremor_amp;
  j["tremor_freq"] = n.tremor_freq;
  j["over_push"] = n.over_push;
  j["over_push_jitter"] = n.over_push_jitter;
  return j;
}

NoiseSpec noise_from_json(const json& j, NoiseSpec n) {
  n.sigma = jget(j, "sigma", n.sigma);
  if (j.contains("coupling")) {
    const json& rows = j.at("coupling");
    if (!rows.is_array() || rows.size() != kNumSensors)
      throw io_error("field 'coupling' must be an 8x8 matrix");
    for (int r = 0; r < kNumSensors; ++r) {
      if (!rows[r].is_array() || rows[r].size() != kNumSensors)
        throw io_error("field 'coupling' must be an 8x8 matrix");
      for (int c = 0; c < kNumSensors; ++c)
        n.coupling[r][c] = rows[r][c].get<double>();
    }
  }
  n.coupling_trial_jitter = jget(j, "coupling_trial_jitter",
                                 n.coupling_trial_jitter);
  n.tremor_amp = jget(j, "tremor_amp", n.tremor_amp);
  n.tremor_freq = jget(j, "tremor_freq", n.tremor_freq);
  n.over_push = jget(j, "over_push", n.over_push);
  n.over_push_jitter = jget(j, "over_push_jitter", n.over_push_jitter);
  return n;
}

json mapping_json(const MappingConfig& m) {
  json j;
  j["kind"] = m.kind;
  j["knn_k"] = m.knn_k;
  j["knn_features"] = m.knn_features;
  j["ica"] = {{"max_iterations", m.ica.max_iterations},
              {"restarts", m.ica.restarts},
              {"tolerance", m.ica.tolerance},
              {"seed", m.ica.seed}};
  j["deadband_factor"] = m.deadband_factor;
  return j;
}

MappingConfig mapping_from_json(const json& j, MappingConfig m) {
  if (j.contains("kind")) m.kind = j.at("kind").get<std::string>();
  m.knn_k = static_cast<int>(jget(j, "knn_k", m.knn_k));
  if (j.contains("knn_features"))
    m.knn_features = j.at("knn_features").get<std::string>();
  if (j.contains("ica")) {
    const json& i = j.at("ica");
    m.ica.max_iterations =
        static_cast<int>(jget(i, "max_iterations", m.ica.max_iterations));
    m.ica.restarts = static_cast<int>(jget(i, "restarts", m.ica.restarts));
    m.ica.tolerance = jget(i, "tolerance", m.ica.tolerance);
    if (i.contains("seed")) m.ica.seed = i.at("seed").get<std::uint64_t>();
  }
  m.deadband_factor = jget(j, "deadband_factor", m.deadband_factor);
  return m;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(digest));
  return buf;
}

json eigen_vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd eigen_vector_from_json(const json& j) {
  if (!j.is_array()) throw io_error("expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

json eigen_matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

Eigen::MatrixXd eigen_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw io_error("expected a matrix (array of rows)");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(r)].size()) !=
        cols)
      throw io_error("matrix rows have uneven lengths");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) =
          j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
              .get<double>();
  }
  return m;
}

void validate_or_throw(const InterfaceGeometry& g, const SpringParams& sp) {
  const auto issues = validate(g, sp);
  if (!issues.empty())
    throw io_error("invalid configuration: " + issues.front().field + ": " +
                   issues.front().message);
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";  // merge +0/-0 so reports don't show "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  double back = 0.0;
  std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
  if (back != value) std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string mapping_kind_name(MappingKind kind) {
  switch (kind) {
    case MappingKind::Statics: return "statics";
    case MappingKind::GlobalIca: return "global-ica";
    case MappingKind::LocalIca: return "local-ica";
    default: return "knn";
  }
}

MappingKind mapping_kind_from_name(const std::string& name) {
  if (name == "statics") return MappingKind::Statics;
  if (name == "global-ica") return MappingKind::GlobalIca;
  if (name == "local-ica") return MappingKind::LocalIca;
  if (name == "knn") return MappingKind::Knn;
  throw io_error("unknown mapping kind: '" + name + "'");
}

// --- trial CSV ---------------------------------------------------------------

std::string trial_to_csv(const Trial& trial) {
  if (trial.has_truth && (trial.truth_pose.size() != trial.frames.size() ||
                          trial.truth_cmd.size() != trial.frames.size()))
    throw io_error("trial truth arrays do not match the frame count");
  std::string out = "t,f1,f2,f3,f4,f5,f6,f7,f8";
  if (trial.has_truth) out += ",x,y,yaw,pitch,fx,fy,fz,m";
  out += '\n';
  for (std::size_t k = 0; k < trial.frames.size(); ++k) {
    const SensorFrame& frame = trial.frames[k];
    out += format_double(frame.t);
    for (double f : frame.f) {
      out += ',';
      out += format_double(f);
    }
    if (trial.has_truth) {
      const Pose& p = trial.truth_pose[k];
      const CommandVector& c = trial.truth_cmd[k];
      for (double v : {p.x, p.y, p.yaw, p.pitch, c.fx, c.fy, c.fz, c.m}) {
        out += ',';
        out += format_double(v);
      }
    }
    out += '\n';
  }
  return out;
}

Trial trial_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty trial file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  static const std::vector<std::string> base{"t",  "f1", "f2", "f3", "f4",
                                             "f5", "f6", "f7", "f8"};
  static const std::vector<std::string> truth{"x",  "y",  "yaw", "pitch",
                                              "fx", "fy", "fz",  "m"};
  const auto names = split(line, ',');
  for (std::size_t i = 0; i < base.size(); ++i)
    if (i >= names.size() || names[i] != base[i])
      throw io_error("malformed header: missing column " + base[i]);
  bool has_truth = false;
  if (names.size() == base.size() + truth.size()) {
    for (std::size_t i = 0; i < truth.size(); ++i)
      if (names[base.size() + i] != truth[i])
        throw io_error("malformed header: missing column " + truth[i]);
    has_truth = true;
  } else if (names.size() != base.size()) {
    throw io_error("malformed header: expected " +
                   std::to_string(base.size()) + " or " +
                   std::to_string(base.size() + truth.size()) +
                   " columns, found " + std::to_string(names.size()));
  }

  Trial trial;
  trial.has_truth = has_truth;
  const std::size_t expected =
      base.size() + (has_truth ? truth.size() : std::size_t{0});
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != expected)
      throw io_error("row " + std::to_string(row) + ": expected " +
                     std::to_string(expected) + " fields, found " +
                     std::to_string(fields.size()));
    const std::string where = "row " + std::to_string(row);
    SensorFrame frame;
    frame.t = parse_number(fields[0], where);
    for (int i = 0; i < kNumSensors; ++i)
      frame.f[i] = parse_number(fields[1 + static_cast<std::size_t>(i)], where);
    trial.frames.push_back(frame);
    if (has_truth) {
      Pose p;
      p.x = parse_number(fields[9], where);
      p.y = parse_number(fields[10], where);
      p.yaw = parse_number(fields[11], where);
      p.pitch = parse_number(fields[12], where);
      trial.truth_pose.push_back(p);
      CommandVector c;
      c.fx = parse_number(fields[13], where);
      c.fy = parse_number(fields[14], where);
      c.fz = parse_number(fields[15], where);
      c.m = parse_number(fields[16], where);
      trial.truth_cmd.push_back(c);
    }
  }
  return trial;
}

// --- dataset directory --------------------------------------------------------

void save_dataset(const Dataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["format"] = "pedalmap-dataset";
  manifest["version"] = kDatasetVersion;
  json trials = json::array();
  for (std::size_t i = 0; i < data.trials.size(); ++i) {
    const Trial& t = data.trials[i];
    const std::string name = "trial_" + std::to_string(i) + ".csv";
    write_text_file(dir / name, trial_to_csv(t));
    trials.push_back({{"file", name},
                      {"subject", t.subject},
                      {"direction", to_string(t.direction)},
                      {"seed", t.seed}});
  }
  manifest["trials"] = trials;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Dataset load_dataset(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path))
    throw io_error("missing manifest: " + manifest_path.string());
  const json manifest =
      parse_json(read_text_file(manifest_path), "manifest.json");
  if (!manifest.contains("format") ||
      manifest.at("format").get<std::string>() != "pedalmap-dataset")
    throw io_error("not a dataset manifest: " + manifest_path.string());
  if (!manifest.contains("trials") || !manifest.at("trials").is_array())
    throw io_error("manifest is missing the trial list");

  Dataset data;
  for (const json& entry : manifest.at("trials")) {
    for (const char* key : {"file", "subject", "direction", "seed"})
      if (!entry.contains(key))
        throw io_error(std::string("manifest entry is missing '") + key + "'");
    const std::string name = entry.at("file").get<std::string>();
    const auto file = dir / name;
    if (!std::filesystem::exists(file))
      throw io_error("manifest references missing file: " + name);
    Trial trial = trial_from_csv(read_text_file(file));
    trial.subject = entry.at("subject").get<int>();
    const std::string dname = entry.at("direction").get<std::string>();
    const auto direction = parse_direction(dname);
    if (!direction)
      throw io_error("manifest entry has unknown direction: '" + dname + "'");
    trial.direction = *direction;
    trial.seed = entry.at("seed").get<std::uint64_t>();
    data.trials.push_back(std::move(trial));
  }
  return data;
}

// --- config -------------------------------------------------------------------

Config default_config() {
  Config config;
  config.geometry = default_geometry();
  config.springs = default_springs();
  config.noise = NoiseSpec::none();
  return config;
}

std::string config_to_json(const Config& config) {
  json j;
  j["format"] = "pedalmap-config";
  j["version"] = kConfigVersion;
  j["geometry"] = geometry_json(config.geometry);
  j["springs"] = springs_json(config.springs);
  j["noise"] = noise_json(config.noise);
  j["mapping"] = mapping_json(config.mapping);
  return j.dump(2) + "\n";
}

Config config_from_json(const std::string& json_text) {
  const json j = parse_json(json_text, "config");
  if (j.contains("format") &&
      j.at("format").get<std::string>() != "pedalmap-config")
    throw io_error("not a config file");
  if (j.contains("version") && j.at("version").get<int>() != kConfigVersion)
    throw io_error("config version mismatch: expected " +
                   std::to_string(kConfigVersion));
  Config config = default_config();
  if (j.contains("geometry"))
    config.geometry = geometry_from_json(j.at("geometry"), config.geometry);
  if (j.contains("springs"))
    config.springs = springs_from_json(j.at("springs"), config.springs);
  if (j.contains("noise"))
    config.noise = noise_from_json(j.at("noise"), config.noise);
  if (j.contains("mapping"))
    config.mapping = mapping_from_json(j.at("mapping"), config.mapping);
  validate_or_throw(config.geometry, config.springs);
  return config;
}

void save_config(const Config& config, const std::filesystem::path& file) {
  write_text_file(file, config_to_json(config));
}

Config load_config(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file))
    throw io_error("missing config file: " + file.string());
  return config_from_json(read_text_file(file));
}

// --- model --------------------------------------------------------------------

std::string model_to_json(const MappingModel& model) {
  json payload;
  payload["kind"] = mapping_kind_name(model.kind);
  payload["geometry"] = geometry_json(model.geometry);
  payload["springs"] = springs_json(model.springs);
  payload["bands"] = to_json(model.bands.eps);
  json blocks = json::array();
  for (const IcaBlock& block : model.blocks) {
    json b;
    b["mean"] = eigen_vector_json(block.mean);
    b["unmixing"] = eigen_matrix_json(block.unmixing);
    b["sensors"] = block.sensors;
    b["channels"] = block.channels;
    json wiring = json::array();
    for (const ChannelWiring& w : block.wiring)
      wiring.push_back({{"component", w.component},
                        {"sign", w.sign},
                        {"scale", w.scale}});
    b["wiring"] = wiring;
    blocks.push_back(b);
  }
  payload["blocks"] = blocks;
  payload["knn_k"] = model.knn_k;
  payload["knn_features"] =
      model.knn_features == KnnFeatureMode::RawForces ? "raw" : "wrench";
  json samples = json::array();
  for (const KnnSample& s : model.knn_samples)
    samples.push_back({{"label", to_string(s.label)},
                       {"features", eigen_vector_json(s.features)}});
  payload["knn_samples"] = samples;

  json outer;
  outer["format"] = "pedalmap-model";
  outer["version"] = kModelVersion;
  outer["digest"] = digest_hex(fnv1a64(payload.dump()));
  outer["model"] = payload;
  return outer.dump(2) + "\n";
}

MappingModel model_from_json(const std::string& json_text) {
  const json outer = parse_json(json_text, "model");
  if (!outer.contains("format") ||
      outer.at("format").get<std::string>() != "pedalmap-model")
    throw io_error("not a model file");
  if (!outer.contains("version") ||
      outer.at("version").get<int>() != kModelVersion)
    throw io_error("model version mismatch: expected " +
                   std::to_string(kModelVersion));
  if (!outer.contains("model") || !outer.contains("digest"))
    throw io_error("model file is missing its payload or digest");
  const json& payload = outer.at("model");
  if (outer.at("digest").get<std::string>() !=
      digest_hex(fnv1a64(payload.dump())))
    throw io_error("model digest mismatch: file was modified or truncated");

  MappingModel model;
  model.kind =
      mapping_kind_from_name(payload.at("kind").get<std::string>());
  model.geometry = geometry_from_json(payload.at("geometry"), model.geometry);
  model.springs = springs_from_json(payload.at("springs"), model.springs);
  from_json_array(payload, "bands", model.bands.eps);
  for (const json& b : payload.at("blocks")) {
    IcaBlock block;
    block.mean = eigen_vector_from_json(b.at("mean"));
    block.unmixing = eigen_matrix_from_json(b.at("unmixing"));
    block.sensors = b.at("sensors").get<std::vector<int>>();
    block.channels = b.at("channels").get<std::vector<int>>();
    for (const json& w : b.at("wiring")) {
      ChannelWiring wire;
      wire.component = w.at("component").get<int>();
      wire.sign = w.at("sign").get<double>();
      wire.scale = w.at("scale").get<double>();
      block.wiring.push_back(wire);
    }
    model.blocks.push_back(std::move(block));
  }
  model.knn_k = payload.at("knn_k").get<int>();
  model.knn_features =
      payload.at("knn_features").get<std::string>() == "raw"
          ? KnnFeatureMode::RawForces
          : KnnFeatureMode::Wrench;
  for (const json& s : payload.at("knn_samples")) {
    KnnSample sample;
    const std::string lname = s.at("label").get<std::string>();
    const auto label = parse_direction(lname);
    if (!label)
      throw io_error("model sample has unknown label: '" + lname + "'");
    sample.label = *label;
    sample.features = eigen_vector_from_json(s.at("features"));
    model.knn_samples.push_back(std::move(sample));
  }
  return model;
}

void save_model(const MappingModel& model, const std::filesystem::path& file) {
  write_text_file(file, model_to_json(model));
}

MappingModel load_model(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file))
    throw io_error("missing model file: " + file.string());
  return model_from_json(read_text_file(file));
}

// --- reports ------------------------------------------------------------------

std::string accuracy_report_text(const AccuracyReport& report,
                                 const std::string& model_name) {
  std::string out = "# direction-prediction accuracy\n";
  out += "model: " + model_name + "\n";
  out += "direction,subjects,mean,stdev,total,correct,neutral\n";
  for (const auto& [direction, stats] : report.per_direction) {
    int total = 0, correct = 0, neutral = 0;
    const auto it = report.cells.find(direction);
    if (it != report.cells.end()) {
      for (const auto& [subject, cell] : it->second) {
        total += cell.total;
        correct += cell.correct;
        neutral += cell.neutral;
      }
    }
    out += to_string(direction) + "," + std::to_string(stats.subjects) + "," +
           format_double(stats.mean) + "," + format_double(stats.stdev) + "," +
           std::to_string(total) + "," + std::to_string(correct) + "," +
           std::to_string(neutral) + "\n";
  }
  out += "grand_mean: " + format_double(report.grand_mean) + "\n";
  out += "xy_plane_mean: " + format_double(report.xy_plane_mean) + " over " +
         std::to_string(report.xy_plane_count) + " directions\n";
  out += "xz_plane_mean: " + format_double(report.xz_plane_mean) + " over " +
         std::to_string(report.xz_plane_count) + " directions\n";
  out += "yz_plane_mean: " + format_double(report.yz_plane_mean) + " over " +
         std::to_string(report.yz_plane_count) + " directions\n";
  out += "pooled_total: " + std::to_string(report.total) + "\n";
  out += "pooled_correct: " + std::to_string(report.correct) + "\n";
  out += "pooled_accuracy: " + format_double(report.pooled_accuracy()) + "\n";
  return out;
}

std::string comparison_report_text(const ModelComparison& comparison) {
  std::string out = "# model comparison\n";
  out += "metric";
  for (const std::string& name : comparison.names) out += "," + name;
  out += "\n";
  const auto metric_row = [&](const std::string& label, auto getter) {
    out += label;
    for (const AccuracyReport& r : comparison.reports)
      out += "," + format_double(getter(r));
    out += "\n";
  };
  metric_row("grand_mean", [](const AccuracyReport& r) { return r.grand_mean; });
  metric_row("xy_plane_mean",
             [](const AccuracyReport& r) { return r.xy_plane_mean; });
  metric_row("xz_plane_mean",
             [](const AccuracyReport& r) { return r.xz_plane_mean; });
  metric_row("yz_plane_mean",
             [](const AccuracyReport& r) { return r.yz_plane_mean; });
  metric_row("pooled_accuracy",
             [](const AccuracyReport& r) { return r.pooled_accuracy(); });

  out += "direction";
  for (const std::string& name : comparison.names) out += "," + name;
  out += "\n";
  if (!comparison.reports.empty()) {
    for (const auto& [direction, stats] : comparison.reports[0].per_direction) {
      out += to_string(direction);
      for (const AccuracyReport& r : comparison.reports) {
        const auto it = r.per_direction.find(direction);
        out += "," + format_double(
                         it != r.per_direction.end() ? it->second.mean : 0.0);
      }
      out += "\n";
    }
  }
  return out;
}

std::string workspace_report_text(const std::vector<WorkspaceSlice>& sweep) {
  std::string out =
      "yaw,samples,accepted,acceptance,area,x_min,x_max,y_min,y_max\n";
  for (const WorkspaceSlice& s : sweep) {
    out += format_double(s.yaw) + "," + std::to_string(s.samples) + "," +
           std::to_string(s.accepted.size()) + "," +
           format_double(s.acceptance) + "," + format_double(s.area) + "," +
           format_double(s.x_min) + "," + format_double(s.x_max) + "," +
           format_double(s.y_min) + "," + format_double(s.y_max) + "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& file,
                     const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open for writing: " + file.string());
  out << content;
  if (!out) throw io_error("write failed: " + file.string());
}

}  // namespace pedalmap
