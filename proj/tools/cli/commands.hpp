#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cdprov/classifiers.hpp"
#include "cdprov/corpus.hpp"
#include "cdprov/evaluation.hpp"

namespace cdprov::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kPartialFailure = 3,
};

struct ExtractOptions {
  std::filesystem::path inputDir;
  std::optional<std::filesystem::path> labels;
  std::filesystem::path out;
  unsigned threads = 1;
};

struct ExtractSummary {
  std::size_t files = 0;
  std::size_t rows = 0;
  std::vector<std::string> failures;  // one line per skipped file
  std::vector<std::string> warnings;  // parser warnings, prefixed by file

  bool partial() const noexcept { return !failures.empty(); }
};

/// One CSV row per *.xmi file, in file-name order. Files that fail to parse
/// (or have no manifest entry) are skipped and reported.
/// Throws NoInputs or AllInputsFailed.
ExtractSummary run_extract(const ExtractOptions& options);

struct RankOptions {
  std::filesystem::path features;
  std::optional<std::filesystem::path> out;  // stdout when absent
};

std::string run_rank(const RankOptions& options);

struct EvaluateOptions {
  std::filesystem::path features;
  std::vector<ClassifierKind> classifiers{kAllClassifierKinds.begin(), kAllClassifierKinds.end()};
  Hyperparameters hp;
  CvConfig cv;
  bool perClass = false;
  std::filesystem::path out = "evaluation";
};

/// Writes report.txt, report.csv and folds.csv into options.out.
std::vector<MetricsReport> run_evaluate(const EvaluateOptions& options);

struct TrainOptions {
  std::filesystem::path features;
  ClassifierSpec spec;
  std::uint64_t seed = 7;
  std::filesystem::path out = "model.json";
};

TrainedModel run_train(const TrainOptions& options);

struct PredictOptions {
  std::filesystem::path model;
  std::filesystem::path xmi;
};

/// `label=<FwCD|RECD> probRECD=<0.xxxx>`
std::string run_predict(const PredictOptions& options);

struct ReportOptions {
  std::optional<std::filesystem::path> ranking;     // output of `rank`
  std::optional<std::filesystem::path> evaluation;  // directory written by `evaluate`
  std::optional<std::filesystem::path> out;
};

/// Combined configuration echo, feature ranking and classifier table.
/// Throws MissingInputs when no input exists.
std::string run_report(const ReportOptions& options);

/// Parses a comma-separated classifier list, or "all".
std::vector<ClassifierKind> parse_classifier_list(std::string_view text);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace cdprov::cli
