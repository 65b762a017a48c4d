#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "cdprov/error.hpp"
#include "cdprov/features.hpp"
#include "cdprov/infogain.hpp"
#include "cdprov/parallel.hpp"
#include "cdprov/xmi.hpp"

namespace cdprov::cli {
namespace fs = std::filesystem;

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = text.find(sep);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    text.remove_prefix(pos + 1);
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string pad_right(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string pad_left(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.insert(0, width - out.size(), ' ');
  return out;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::WriteFailed, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<ClassifierKind> parse_classifier_list(std::string_view text) {
  if (text == "all") return {kAllClassifierKinds.begin(), kAllClassifierKinds.end()};
  std::vector<ClassifierKind> out;
  for (auto item : split(text, ',')) {
    const auto kind = parse_classifier_kind(item);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown classifier \"" + std::string(item) + "\"");
    if (std::find(out.begin(), out.end(), *kind) == out.end()) out.push_back(*kind);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "no classifiers selected");
  return out;
}

ExtractSummary run_extract(const ExtractOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(options.inputDir, ec)) {
    throw Error(ErrorCode::NoInputs, options.inputDir.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(options.inputDir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xmi") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  if (files.empty()) throw Error(ErrorCode::NoInputs, "no .xmi files in " + options.inputDir.string());

  std::optional<std::map<std::string, Label>> labels;
  if (options.labels) {
    labels.emplace();
    for (const auto& e : parse_manifest(read_text_file(*options.labels))) (*labels)[e.file] = e.label;
  }

  struct Outcome {
    std::optional<FeatureRow> row;
    std::optional<Label> label;
    std::string failure;
    std::vector<std::string> warnings;
  };
  std::vector<Outcome> outcomes(files.size());
  parallel_for(files.size(), options.threads, [&](std::size_t i) {
    auto& o = outcomes[i];
    const std::string name = files[i].filename().string();
    try {
      if (labels) {
        const auto it = labels->find(name);
        if (it == labels->end()) throw Error(ErrorCode::MissingInputs, "no label in manifest");
        o.label = it->second;
      }
      std::vector<std::string> warnings;
      const auto diagram = parse_xmi(read_text_file(files[i]), &warnings);
      o.row = to_row(extract_features(diagram));
      for (auto& w : warnings) o.warnings.push_back(name + ": " + w);
    } catch (const Error& e) {
      o.row.reset();
      o.failure = name + ": " + e.what();
    }
  });

  ExtractSummary summary;
  summary.files = files.size();
  Dataset labeled;
  FeatureMatrix unlabeled(canonical_schema());
  for (auto& o : outcomes) {
    summary.warnings.insert(summary.warnings.end(), o.warnings.begin(), o.warnings.end());
    if (!o.row) {
      summary.failures.push_back(o.failure);
      continue;
    }
    ++summary.rows;
    if (labels) {
      labeled.add_row(*o.row, *o.label);
    } else {
      unlabeled.add_row(*o.row);
    }
  }
  if (summary.rows == 0) {
    throw Error(ErrorCode::AllInputsFailed, "none of the " + std::to_string(files.size()) + " files could be used");
  }
  if (options.out.has_parent_path()) ensure_directory(options.out.parent_path());
  write_text_file(options.out, labels ? format_csv(labeled) : format_unlabeled_csv(unlabeled));
  return summary;
}

std::string run_rank(const RankOptions& options) {
  const auto ds = load_csv(options.features);
  if (ds.empty()) throw Error(ErrorCode::BadValue, options.features.string() + " has no rows to rank");
  const auto csv = format_ranking_csv(rank_features(ds));
  if (options.out) {
    if (options.out->has_parent_path()) ensure_directory(options.out->parent_path());
    write_text_file(*options.out, csv);
  }
  return csv;
}

std::vector<MetricsReport> run_evaluate(const EvaluateOptions& options) {
  const auto ds = load_csv(options.features);
  std::vector<MetricsReport> reports;
  for (auto kind : options.classifiers) {
    reports.push_back(cross_validate(ClassifierSpec{kind, options.hp}, ds, options.cv));
  }
  const auto rendered = render_report(reports, options.perClass);
  ensure_directory(options.out);
  write_text_file(options.out / "report.txt", rendered.text);
  write_text_file(options.out / "report.csv", rendered.csv);
  write_text_file(options.out / "folds.csv", render_folds_csv(reports));
  return reports;
}

TrainedModel run_train(const TrainOptions& options) {
  const auto ds = load_csv(options.features);
  auto model = train(options.spec, ds, options.seed);
  if (options.out.has_parent_path()) ensure_directory(options.out.parent_path());
  save_model(model, options.out);
  return model;
}

std::string run_predict(const PredictOptions& options) {
  const auto model = load_model(options.model);
  const auto expected = canonical_schema();
  if (model.schema != expected) {
    throw Error(ErrorCode::SchemaMismatch, "model was not trained on the canonical class-diagram features");
  }
  const auto diagram = parse_xmi(read_text_file(options.xmi));
  const auto row = to_row(extract_features(diagram));
  const auto p = predict_proba(model, row);
  char buf[64];
  std::snprintf(buf, sizeof buf, "label=%s probRECD=%.4f", std::string(to_string(p.label)).c_str(), p.probRECD);
  return buf;
}

std::string run_report(const ReportOptions& options) {
  std::error_code ec;
  const bool have_rank = options.ranking.has_value();
  const bool have_eval = options.evaluation.has_value();
  if (!have_rank && !have_eval) throw Error(ErrorCode::MissingInputs, "give --ranking and/or --evaluation");
  if (have_rank && !fs::is_regular_file(*options.ranking, ec)) {
    throw Error(ErrorCode::MissingInputs, options.ranking->string() + " does not exist");
  }
  const fs::path eval_csv = have_eval ? *options.evaluation / "report.csv" : fs::path{};
  if (have_eval && !fs::is_regular_file(eval_csv, ec)) {
    throw Error(ErrorCode::MissingInputs, eval_csv.string() + " does not exist");
  }

  std::ostringstream out;
  out << "Class diagram provenance report\n"
      << "===============================\n\n";

  std::vector<std::vector<std::string_view>> eval_rows;
  std::vector<std::string_view> eval_header;
  std::string eval_text;
  if (have_eval) {
    eval_text = read_text_file(eval_csv);
    const auto lines = lines_of(eval_text);
    if (lines.empty()) throw Error(ErrorCode::BadHeader, eval_csv.string() + " is empty");
    eval_header = split(lines.front(), ',');
    if (eval_header.size() < 5 || eval_header[0] != "classifier" || eval_header[1] != "name" ||
        eval_header[eval_header.size() - 3] != "folds" || eval_header.back() != "seed") {
      throw Error(ErrorCode::BadHeader, eval_csv.string() + " is not an evaluate report");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
      auto cells = split(lines[i], ',');
      if (cells.size() != eval_header.size()) {
        throw Error(ErrorCode::RaggedRow, eval_csv.string() + " line " + std::to_string(i + 1));
      }
      eval_rows.push_back(std::move(cells));
    }
  }

  out << "Configuration\n";
  if (!eval_rows.empty()) {
    const auto& first = eval_rows.front();
    const std::size_t n = eval_header.size();
    out << "  folds:   " << first[n - 3] << "\n"
        << "  repeats: " << first[n - 2] << "\n"
        << "  seed:    " << first[n - 1] << "\n";
  } else {
    out << "  (no evaluation configuration)\n";
  }
  out << "\n";

  out << "Feature ranking (information gain, bits)\n";
  if (have_rank) {
    const auto text = read_text_file(*options.ranking);
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != "feature,infogain") {
      throw Error(ErrorCode::BadHeader, options.ranking->string() + " is not a rank output");
    }
    out << "  " << pad_right("Feature", 14) << pad_left("InfoGain", 10) << "\n";
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto cells = split(lines[i], ',');
      if (cells.size() != 2) throw Error(ErrorCode::RaggedRow, options.ranking->string() + " line " + std::to_string(i + 1));
      out << "  " << pad_right(cells[0], 14) << pad_left(cells[1], 10) << "\n";
    }
  } else {
    out << "  absent: no ranking input\n";
  }
  out << "\n";

  out << "Classification performance\n";
  if (have_eval) {
    const std::size_t first_metric = 2;
    const std::size_t end_metric = eval_header.size() - 3;
    out << "  " << pad_right("Classifier", 16);
    for (std::size_t c = first_metric; c < end_metric; ++c) out << "  " << pad_left(eval_header[c], 10);
    out << "\n";
    for (const auto& row : eval_rows) {
      out << "  " << pad_right(row[1], 16);
      for (std::size_t c = first_metric; c < end_metric; ++c) out << "  " << pad_left(row[c], 10);
      out << "\n";
    }
  } else {
    out << "  absent: no evaluation input\n";
  }

  const std::string report = out.str();
  if (options.out) {
    if (options.out->has_parent_path()) ensure_directory(options.out->parent_path());
    write_text_file(*options.out, report);
  }
  return report;
}

}  // namespace cdprov::cli
