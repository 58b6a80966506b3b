// svrkit command-line tool: corpus preparation, cutoff fitting, dataset
// building, and model-output scoring as reproducible jobs.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "svrkit/error.hpp"
#include "svrkit/pipeline.hpp"

namespace {

using svr::RunConfig;

struct CommonFlags {
  std::string config_path;
  std::int64_t seed = -1;
  int workers = 0;
};

RunConfig resolve_config(const CommonFlags& flags) {
  if (flags.config_path.empty()) {
    throw svr::Error(svr::ErrorCode::configuration, "--config is required");
  }
  RunConfig cfg = svr::load_run_config(flags.config_path);
  if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.workers > 0) cfg.workers = flags.workers;
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Job config file (key = value lines)");
  cmd->add_option("--seed", flags.seed, "Override the config seed");
  cmd->add_option("--workers", flags.workers, "Override the config worker count");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speaker-verification reasoning supervision toolkit"};
  app.require_subcommand(1);

  CommonFlags fit_flags;
  auto* fit = app.add_subcommand("fit-cutoffs",
                                 "Fit per-gender pitch and pooled brightness cutoffs");
  add_common_flags(fit, fit_flags);

  CommonFlags build_flags;
  auto* build = app.add_subcommand("build-dataset",
                                   "Generate supervision instances and label manifests");
  add_common_flags(build, build_flags);

  std::string score_mode = "sv";
  std::string predictions_path, references_path, report_out, details_out;
  auto* score = app.add_subcommand("score", "Score model outputs against references");
  score->add_option("--mode", score_mode, "Evaluation mode: sv or svr");
  score->add_option("--predictions", predictions_path,
                    "JSONL of {trial_id, generated_text}")
      ->required();
  score->add_option("--references", references_path,
                    "Reference instances manifest (from build-dataset)")
      ->required();
  score->add_option("--report-out", report_out, "Write the report JSON here");
  score->add_option("--details-out", details_out, "Write per-trial details JSONL here");

  std::string diagnose_input, diagnose_report_out;
  auto* diagnose = app.add_subcommand("diagnose",
                                      "Re-aggregate a per-trial details file");
  diagnose->add_option("--input", diagnose_input, "Details JSONL from score")
      ->required();
  diagnose->add_option("--report-out", diagnose_report_out, "Write the report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      const auto report = svr::cmd_fit_cutoffs(resolve_config(fit_flags));
      std::cout << "fit-cutoffs: " << report.utterances << " utterances, "
                << report.read_errors << " read errors, " << report.f0_failed
                << " f0 failures\n";
      std::cout << "  male " << report.male_values << " values -> "
                << report.male_file.string() << "\n";
      std::cout << "  female " << report.female_values << " values -> "
                << report.female_file.string() << "\n";
      std::cout << "  brightness " << report.brightness_values << " values -> "
                << report.brightness_file.string() << "\n";
    } else if (build->parsed()) {
      const auto report = svr::cmd_build_dataset(resolve_config(build_flags));
      std::cout << "build-dataset: " << report.utterances << " utterances ("
                << report.read_errors << " read errors), " << report.trials
                << " trials (" << report.trials_skipped << " skipped, "
                << report.svr_ineligible << " svr-ineligible)\n";
      std::size_t total = 0;
      for (const auto& [task, count] : report.instances_by_task) {
        std::printf("  %-18s %8zu\n", task.c_str(), count);
        total += count;
      }
      std::cout << "  total instances: " << total << " -> "
                << report.instances_file.string() << "\n";
    } else if (score->parsed()) {
      svr::ScoreOptions opts;
      if (score_mode == "sv") {
        opts.mode = svr::ScoreMode::sv;
      } else if (score_mode == "svr") {
        opts.mode = svr::ScoreMode::svr;
      } else {
        throw svr::Error(svr::ErrorCode::configuration,
                         "--mode must be sv or svr, got '" + score_mode + "'");
      }
      opts.predictions = predictions_path;
      opts.references = references_path;
      opts.report_out = report_out;
      opts.details_out = details_out;
      const auto report = svr::cmd_score(opts);
      std::cout << svr::render_score_table(report);
    } else if (diagnose->parsed()) {
      const auto report = svr::cmd_diagnose(diagnose_input);
      std::cout << svr::render_diagnostics_table(report);
      if (!diagnose_report_out.empty()) {
        nlohmann::json j;
        const auto cell = [](const svr::CellStats& c) {
          return nlohmann::json{
              {"count", c.count}, {"correct", c.correct}, {"accuracy", c.accuracy()}};
        };
        j["schema_version"] = 1;
        j["total"] = report.total;
        j["accuracy"] = {{"overall", cell(report.overall)},
                         {"gt_different", cell(report.gt_different)},
                         {"gt_same", cell(report.gt_same)},
                         {"aligned", cell(report.aligned)},
                         {"mixed", cell(report.mixed)},
                         {"reversal", cell(report.reversal)},
                         {"supportive_to_different", cell(report.supportive_to_different)},
                         {"conflicting_to_same", cell(report.conflicting_to_same)}};
        std::ofstream out(diagnose_report_out, std::ios::trunc);
        out << j.dump(2) << "\n";
      }
    }
  } catch (const svr::Error& e) {
    nlohmann::json err;
    err["error"] = {{"code", e.code_name()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = {{"code", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
