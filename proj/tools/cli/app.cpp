#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "cdprov/error.hpp"
#include "cli/commands.hpp"

namespace cdprov::cli {
namespace {

constexpr const char* kFeatureCsvSchema =
    "Feature CSV: header numCls,numAttr,numOper,numPara,numAssoc,numAssocType,numOrpCls,\n"
    "avgAttrCls,avgOperCls,avgParaOper,avgAssocCls,avgOrpCls,extOperPara,extAttr,extOper,\n"
    "extOrpCls[,label]. Ratios use 4 decimals, counts are integers, ext* columns are\n"
    "true/false, label is FwCD or RECD.";

constexpr const char* kManifestSchema = "Labels manifest: header file,label; one row per diagram file.";

struct Globals {
  int verbosity = 0;
  unsigned threads = 1;
};

void log(const Globals& g, int level, const std::string& message) {
  if (g.verbosity >= level) std::cerr << message << "\n";
}

void add_hyperparameters(CLI::App* cmd, Hyperparameters& hp) {
  cmd->add_option("--knn-k", hp.knnK, "Neighbours for knn")->capture_default_str();
  cmd->add_option("--trees", hp.forestTrees, "Trees in random_forest")->capture_default_str();
  cmd->add_option("--bootstrap", hp.forestBootstrap, "Bootstrap sampling in random_forest")->capture_default_str();
  cmd->add_option("--oner-min-bucket", hp.oneRMinBucket, "Minimum majority count per OneR bucket")
      ->capture_default_str();
  cmd->add_option("--ridge", hp.logisticRidge, "Ridge penalty for logistic_regression")->capture_default_str();
  cmd->add_option("--max-iterations", hp.logisticMaxIterations, "Newton iterations for logistic_regression")
      ->capture_default_str();
  cmd->add_option("--features-per-node", hp.featuresPerNode, "Features tried per tree node (0: log2(F)+1)")
      ->capture_default_str();
  cmd->add_option("--table-stale", hp.decisionTableStale, "Non-improving expansions before decision_table stops")
      ->capture_default_str();
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Classify UML class diagrams as forward-engineered (FwCD) or reverse-engineered (RECD)", "cdprov"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cdprov 0.3.0");
  Globals g;
  app.add_flag("-v,--verbose", g.verbosity, "Print progress and warnings to stderr (repeat for more)");
  app.add_option("--threads", g.threads, "Worker threads; outputs do not depend on this")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.footer("Exit codes: 0 success, 1 usage error, 2 data error, 3 partial failure.");

  // generate
  CorpusConfig gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic labeled corpus of XMI diagrams");
  generate->fallthrough();
  generate->add_option("--count", gen.total, "Number of diagrams")->capture_default_str();
  generate->add_option("--recd-fraction", gen.recdFraction, "Fraction labeled RECD")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  generate->add_option("--noise", gen.noise, "Chance a diagram is drawn from the other label's profile")
      ->capture_default_str();
  generate->add_option("--out", gen.outputDirectory, "Output directory")->capture_default_str();
  generate->footer(std::string("Writes dNNNN.xmi files and labels.csv.\n") + kManifestSchema);

  // extract
  ExtractOptions ext;
  ext.out = "features.csv";
  std::string extLabels;
  auto* extract = app.add_subcommand("extract", "Extract the 16 structural features from a directory of XMI files");
  extract->fallthrough();
  extract->add_option("--input", ext.inputDir, "Directory of *.xmi files")->required();
  extract->add_option("--labels", extLabels, "Labels manifest; adds a label column");
  extract->add_option("--out", ext.out, "Feature CSV to write")->capture_default_str();
  extract->footer(std::string("Rows follow file-name order. Unparseable files are skipped (exit 3).\n") +
                  kManifestSchema + "\n" + kFeatureCsvSchema);

  // rank
  RankOptions rk;
  std::string rankOut;
  auto* rank = app.add_subcommand("rank", "Rank features by information gain");
  rank->fallthrough();
  rank->add_option("--features", rk.features, "Labeled feature CSV")->required();
  rank->add_option("--out", rankOut, "Ranking CSV to write (default: stdout)");
  rank->footer(std::string("Output: header feature,infogain; 16 rows, descending, 4 decimals.\n") + kFeatureCsvSchema);

  // evaluate
  EvaluateOptions ev;
  ev.cv.seed = 7;
  std::string evClassifiers = "all";
  auto* evaluate = app.add_subcommand("evaluate", "Repeated stratified cross-validation of classifiers");
  evaluate->fallthrough();
  evaluate->add_option("--features", ev.features, "Labeled feature CSV")->required();
  evaluate->add_option("--classifiers", evClassifiers,
                       "all, or a comma list of zero_r,one_r,naive_bayes,logistic_regression,knn,"
                       "decision_stump,random_tree,random_forest,decision_table")
      ->capture_default_str();
  evaluate->add_option("--folds", ev.cv.folds, "Folds per repeat")->capture_default_str();
  evaluate->add_option("--repeats", ev.cv.repeats, "Repeats")->capture_default_str();
  evaluate->add_option("--seed", ev.cv.seed, "Master seed")->capture_default_str();
  evaluate->add_flag("--per-class", ev.perClass, "Also report FwCD and macro-averaged precision/recall/F1");
  evaluate->add_option("--out", ev.out, "Output directory")->capture_default_str();
  add_hyperparameters(evaluate, ev.hp);
  evaluate->footer(
      "Writes report.txt, report.csv and folds.csv. RECD is the positive class.\n"
      "report.csv: classifier,name,accuracy,precision,recall,f1,auc[,per-class columns],folds,repeats,seed\n"
      "folds.csv: classifier,repeat,fold,tp,fp,tn,fn,seed");

  // train
  TrainOptions tr;
  std::string trKind;
  auto* trainCmd = app.add_subcommand("train", "Train one classifier on a labeled feature CSV");
  trainCmd->fallthrough();
  trainCmd->add_option("--features", tr.features, "Labeled feature CSV")->required();
  trainCmd->add_option("--classifier", trKind, "Classifier kind")->required();
  trainCmd->add_option("--seed", tr.seed, "Training seed")->capture_default_str();
  trainCmd->add_option("--out", tr.out, "Model file to write")->capture_default_str();
  add_hyperparameters(trainCmd, tr.spec.hp);
  trainCmd->footer("Model file: JSON with formatVersion, kind, seed, hyperparameters, featureNames,\n"
                   "featureKinds, optional normStats and the learned structure.");

  // predict
  PredictOptions pr;
  auto* predict = app.add_subcommand("predict", "Classify one XMI diagram with a trained model");
  predict->fallthrough();
  predict->add_option("--model", pr.model, "Model file from train")->required();
  predict->add_option("--xmi", pr.xmi, "Diagram to classify")->required();
  predict->footer("Prints label=<FwCD|RECD> probRECD=<0.xxxx>.");

  // report
  ReportOptions rp;
  std::string rpRanking, rpEvaluation, rpOut;
  auto* report = app.add_subcommand("report", "Combine rank and evaluate outputs into one text report");
  report->fallthrough();
  report->add_option("--ranking", rpRanking, "Ranking CSV from rank");
  report->add_option("--evaluation", rpEvaluation, "Directory written by evaluate");
  report->add_option("--out", rpOut, "Report file to write (default: stdout)");
  report->footer("At least one input is required; a missing section is marked absent.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (generate->parsed()) {
      gen.threads = g.threads;
      const auto entries = generate_corpus(gen);
      std::cout << "generated " << entries.size() << " diagrams in " << gen.outputDirectory.string()
                << " (seed " << gen.seed << ")\n";
    } else if (extract->parsed()) {
      ext.threads = g.threads;
      if (!extLabels.empty()) ext.labels = extLabels;
      const auto summary = run_extract(ext);
      for (const auto& w : summary.warnings) log(g, 2, "warning: " + w);
      for (const auto& f : summary.failures) std::cerr << "skipped " << f << "\n";
      std::cout << "extracted " << summary.rows << " of " << summary.files << " files into " << ext.out.string()
                << "\n";
      if (!summary.warnings.empty()) log(g, 1, std::to_string(summary.warnings.size()) + " parser warnings");
      if (summary.partial()) return kPartialFailure;
    } else if (rank->parsed()) {
      if (!rankOut.empty()) rk.out = rankOut;
      const auto csv = run_rank(rk);
      if (!rk.out) std::cout << csv;
    } else if (evaluate->parsed()) {
      ev.classifiers = parse_classifier_list(evClassifiers);
      ev.cv.threads = g.threads;
      for (auto kind : ev.classifiers) log(g, 1, "evaluating " + std::string(to_string(kind)));
      const auto reports = run_evaluate(ev);
      std::cout << "evaluated " << reports.size() << " classifiers (" << ev.cv.folds << "-fold x " << ev.cv.repeats
                << ", seed " << ev.cv.seed << ") into " << ev.out.string() << "\n";
    } else if (trainCmd->parsed()) {
      const auto kind = parse_classifier_kind(trKind);
      if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown classifier \"" + trKind + "\"");
      tr.spec.kind = *kind;
      tr.spec.hp.threads = g.threads;
      run_train(tr);
      std::cout << "trained " << trKind << " (seed " << tr.seed << ") into " << tr.out.string() << "\n";
    } else if (predict->parsed()) {
      std::cout << run_predict(pr) << "\n";
    } else if (report->parsed()) {
      if (!rpRanking.empty()) rp.ranking = rpRanking;
      if (!rpEvaluation.empty()) rp.evaluation = rpEvaluation;
      if (!rpOut.empty()) rp.out = rpOut;
      const auto text = run_report(rp);
      if (!rp.out) std::cout << text;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? kUsageError : kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kSuccess;
}

}  // namespace cdprov::cli
