// Command-line front end. All work happens in the library's command
// functions; this file only parses arguments and reports errors.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pedalmap/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Compliant foot-pedal teleoperation toolkit: simulate sensor data, "
      "map it to motion commands, and score direction predictions."};
  app.require_subcommand(1);

  pedalmap::SimulateOptions sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic labeled trial dataset");
  simulate->add_option("--config", sim.config_file, "Config file (JSON)");
  simulate->add_option("--out", sim.out_dir, "Output dataset directory")
      ->required();
  simulate->add_option("--subjects", sim.subjects, "Number of subjects");
  simulate->add_option("--trials", sim.trials_per_direction,
                       "Trials per direction per subject");
  simulate->add_flag("--no-diagonals{false}", sim.diagonals,
                     "Skip the two-axis directions");
  simulate->add_flag("--noiseless", sim.noiseless,
                     "Ignore the config's noise section");
  simulate->add_option("--seed", sim.seed, "Dataset seed");

  pedalmap::WorkspaceOptions ws;
  auto* workspace = app.add_subcommand(
      "workspace", "Monte Carlo reachable-area sweep over yaw");
  workspace->add_option("--config", ws.config_file, "Config file (JSON)");
  workspace->add_option("--out", ws.out_file, "Output CSV")->required();
  workspace->add_option("--steps", ws.yaw_steps, "Yaw steps, 0..yaw_max");
  workspace->add_option("--samples", ws.samples, "Samples per slice");
  workspace->add_option("--seed", ws.seed, "Sampling seed");

  pedalmap::CalibrateOptions cal;
  std::string cal_kind, cal_features;
  int cal_k = 0;
  double cal_factor = 0.0;
  std::uint64_t cal_seed = 0;
  auto* calibrate = app.add_subcommand(
      "calibrate", "Fit a sensor-to-command model from a dataset");
  calibrate->add_option("--config", cal.config_file, "Config file (JSON)");
  calibrate->add_option("--data", cal.data_dir, "Dataset directory")
      ->required();
  calibrate->add_option("--model", cal.model_file, "Output model file")
      ->required();
  auto* kind_opt = calibrate->add_option(
      "--kind", cal_kind, "statics | global-ica | local-ica | knn");
  auto* k_opt = calibrate->add_option("--k", cal_k, "Neighbours (odd)");
  auto* feat_opt = calibrate->add_option("--features", cal_features,
                                         "kNN features: raw | wrench");
  auto* factor_opt = calibrate->add_option("--deadband-factor", cal_factor,
                                           "Zero-region safety factor");
  auto* seed_opt =
      calibrate->add_option("--seed", cal_seed, "Separation seed");

  pedalmap::EvaluateOptions ev;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Score a model's direction predictions on a dataset");
  evaluate->add_option("--data", ev.data_dir, "Dataset directory")->required();
  evaluate->add_option("--model", ev.model_file, "Model file")->required();
  evaluate->add_option("--report", ev.report_file, "Output report")
      ->required();

  pedalmap::CompareOptions cmp;
  auto* compare = app.add_subcommand(
      "compare", "Score several models on one dataset, side by side");
  compare->add_option("--data", cmp.data_dir, "Dataset directory")->required();
  compare->add_option("--models", cmp.model_files, "Model files")
      ->required()
      ->expected(1, -1);
  compare->add_option("--report", cmp.report_file, "Output report")
      ->required();

  pedalmap::PredictOptions pred;
  auto* predict = app.add_subcommand(
      "predict", "Per-sample commands and labels for a trial CSV");
  predict->add_option("--trial", pred.trial_csv, "Trial CSV")->required();
  predict->add_option("--model", pred.model_file, "Model file")->required();
  predict->add_option("--out", pred.out_file, "Output CSV")->required();

  pedalmap::ParseFramesOptions pf;
  auto* parse_frames = app.add_subcommand(
      "parse-frames", "Decode a binary sensor stream into a trial CSV");
  parse_frames->add_option("--raw", pf.raw_file, "Binary stream file")
      ->required();
  parse_frames->add_option("--out", pf.out_csv, "Output CSV")->required();

  pedalmap::FkOptions fk;
  auto* fk_cmd = app.add_subcommand(
      "fk", "Pose and wrench for six guide lengths (debugging)");
  fk_cmd->add_option("--config", fk.config_file, "Config file (JSON)");
  fk_cmd->add_option("--lengths", fk.guide_lengths, "Six guide lengths (m)")
      ->required()
      ->expected(6);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      pedalmap::run_simulate(sim);
    } else if (workspace->parsed()) {
      pedalmap::run_workspace(ws);
    } else if (calibrate->parsed()) {
      if (kind_opt->count()) cal.kind = cal_kind;
      if (k_opt->count()) cal.knn_k = cal_k;
      if (feat_opt->count()) cal.knn_features = cal_features;
      if (factor_opt->count()) cal.deadband_factor = cal_factor;
      if (seed_opt->count()) cal.seed = cal_seed;
      pedalmap::run_calibrate(cal);
    } else if (evaluate->parsed()) {
      pedalmap::run_evaluate(ev);
    } else if (compare->parsed()) {
      pedalmap::run_compare(cmp);
    } else if (predict->parsed()) {
      pedalmap::run_predict(pred);
    } else if (parse_frames->parsed()) {
      std::cout << pedalmap::run_parse_frames(pf);
    } else if (fk_cmd->parsed()) {
      std::cout << pedalmap::run_fk(fk);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
