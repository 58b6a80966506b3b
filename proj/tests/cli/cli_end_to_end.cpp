// Drives the installed CLI binary over a synthetic corpus: fit-cutoffs,
// build-dataset determinism, self-scoring, diagnose, and the error contract.

#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "corpus_fixture.hpp"
#include "test_util.hpp"

using nlohmann::json;

namespace {

int checks_run = 0;

void expect(bool condition, const std::string& what) {
  ++checks_run;
  if (!condition) {
    std::cerr << "FAILED: " << what << "\n";
    std::exit(1);
  }
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

}  // namespace

int main() {
  const std::string cli = SVRKIT_CLI_PATH;
  testutil::TempDir dir("cli");
  const auto corpus = testutil::make_mini_corpus(dir.path() / "corpus");
  const auto cutoffs_dir = dir.path() / "cutoffs";

  const auto config_for = [&](const std::filesystem::path& out_dir) {
    const auto path = dir.path() / (out_dir.filename().string() + ".cfg");
    testutil::write_file(
        path, testutil::corpus_config(corpus, cutoffs_dir, out_dir, 7, 2));
    return path;
  };

  // fit-cutoffs
  {
    const auto fit_out = dir.path() / "fitlog.txt";
    const auto cfg = dir.path() / "fit.cfg";
    testutil::write_file(
        cfg, testutil::corpus_config(corpus, cutoffs_dir, cutoffs_dir, 7, 2));
    const int rc = run(cli + " fit-cutoffs --config " + cfg.string() + " > " +
                       fit_out.string() + " 2>&1");
    expect(rc == 0, "fit-cutoffs exits 0");
    expect(std::filesystem::exists(cutoffs_dir / "cutoffs_pitch_male.txt"),
           "male cutoffs written");
    expect(std::filesystem::exists(cutoffs_dir / "cutoffs_pitch_female.txt"),
           "female cutoffs written");
    expect(std::filesystem::exists(cutoffs_dir / "cutoffs_brightness.txt"),
           "brightness cutoffs written");
  }

  // build-dataset, twice: byte-identical outputs.
  const auto out1 = dir.path() / "ds1";
  const auto out2 = dir.path() / "ds2";
  {
    const int rc1 = run(cli + " build-dataset --config " + config_for(out1).string() +
                        " > /dev/null 2>&1");
    const int rc2 = run(cli + " build-dataset --config " + config_for(out2).string() +
                        " > /dev/null 2>&1");
    expect(rc1 == 0 && rc2 == 0, "build-dataset exits 0");
    const std::string a = testutil::read_file(out1 / "instances.jsonl");
    const std::string b = testutil::read_file(out2 / "instances.jsonl");
    expect(!a.empty(), "instances were emitted");
    expect(a == b, "identical configs give byte-identical instance manifests");
    expect(testutil::read_file(out1 / "utterances.jsonl") ==
               testutil::read_file(out2 / "utterances.jsonl"),
           "identical configs give byte-identical utterance manifests");
  }

  // score: self-scoring the generated svr targets is perfect.
  {
    std::ifstream in(out1 / "instances.jsonl");
    std::ostringstream preds;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json rec = json::parse(line);
      if (rec["task"] != "svr") continue;
      preds << json{{"trial_id", rec["trial_id"]}, {"generated_text", rec["target"]}}
                   .dump()
            << "\n";
    }
    const auto pred_path = dir.path() / "preds.jsonl";
    testutil::write_file(pred_path, preds.str());

    const auto report_path = dir.path() / "report.json";
    const auto details_path = dir.path() / "details.jsonl";
    const int rc = run(cli + " score --mode svr --predictions " + pred_path.string() +
                       " --references " + (out1 / "instances.jsonl").string() +
                       " --report-out " + report_path.string() + " --details-out " +
                       details_path.string() + " > " +
                       (dir.path() / "score.txt").string() + " 2>&1");
    expect(rc == 0, "score exits 0");

    const json report = json::parse(testutil::read_file(report_path));
    expect(report["accuracy"]["overall"]["accuracy"] == 1.0, "self-score accuracy 1.0");
    expect(report["format_valid_rate"] == 1.0, "self-score format validity 1.0");
    expect(report["support_grounding_rate"] == 1.0, "self-score support grounding 1.0");

    const auto table = testutil::read_file(dir.path() / "score.txt");
    expect(table.find("overall") != std::string::npos, "score prints the subset table");

    // diagnose re-aggregates the details file.
    const auto diag_path = dir.path() / "diag.json";
    const int rc2 = run(cli + " diagnose --input " + details_path.string() +
                        " --report-out " + diag_path.string() + " > /dev/null 2>&1");
    expect(rc2 == 0, "diagnose exits 0");
    const json diag = json::parse(testutil::read_file(diag_path));
    expect(diag["accuracy"]["overall"]["accuracy"] == 1.0, "diagnose accuracy 1.0");
    expect(diag["total"] == report["scored"], "diagnose covers every scored trial");
  }

  // Errors surface as machine-readable JSON on stderr with a nonzero exit.
  {
    const auto err_path = dir.path() / "err.txt";
    const int rc = run(cli + " score --mode svr --predictions /nonexistent.jsonl" +
                       " --references " + (out1 / "instances.jsonl").string() +
                       " > /dev/null 2> " + err_path.string());
    expect(rc != 0, "missing predictions exit nonzero");
    const json err = json::parse(testutil::read_file(err_path));
    expect(err.contains("error") && err["error"].contains("code"),
           "stderr carries the error JSON");
  }

  std::printf("cli end-to-end: %d checks passed\n", checks_run);
  return 0;
}
