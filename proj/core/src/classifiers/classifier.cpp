#include <algorithm>
#include <numeric>

#include "cdprov/classifiers.hpp"
#include "cdprov/error.hpp"

namespace cdprov {

std::string_view to_string(ClassifierKind kind) noexcept {
  switch (kind) {
    case ClassifierKind::ZeroR: return "zero_r";
    case ClassifierKind::OneR: return "one_r";
    case ClassifierKind::NaiveBayes: return "naive_bayes";
    case ClassifierKind::LogisticRegression: return "logistic_regression";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::DecisionStump: return "decision_stump";
    case ClassifierKind::RandomTree: return "random_tree";
    case ClassifierKind::RandomForest: return "random_forest";
    case ClassifierKind::DecisionTable: return "decision_table";
  }
  return "zero_r";
}

std::optional<ClassifierKind> parse_classifier_kind(std::string_view text) noexcept {
  for (auto k : kAllClassifierKinds) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string display_name(ClassifierKind kind, int knnK) {
  switch (kind) {
    case ClassifierKind::ZeroR: return "ZeroR";
    case ClassifierKind::OneR: return "OneR";
    case ClassifierKind::NaiveBayes: return "Naive Bayes";
    case ClassifierKind::LogisticRegression: return "Logistic Reg.";
    case ClassifierKind::Knn: return "KNN - " + std::to_string(knnK);
    case ClassifierKind::DecisionStump: return "Decision Stump";
    case ClassifierKind::RandomTree: return "Random Tree";
    case ClassifierKind::RandomForest: return "Random Forest";
    case ClassifierKind::DecisionTable: return "Decision Table";
  }
  return {};
}

void check_spec(const ClassifierSpec& spec) {
  const auto& hp = spec.hp;
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  };
  require(hp.knnK > 0, "knn.k");
  require(hp.forestTrees > 0, "random_forest.trees");
  require(hp.oneRMinBucket > 0, "one_r.minBucket");
  require(hp.logisticRidge > 0, "logistic.ridge");
  require(hp.logisticMaxIterations > 0, "logistic.maxIterations");
  require(hp.featuresPerNode >= 0, "random_tree.featuresPerNode");
  require(hp.decisionTableStale > 0, "decision_table.stale");
}

Prediction Prediction::from_recd_probability(double p) noexcept {
  Prediction out;
  out.probRECD = std::clamp(p, 0.0, 1.0);
  out.probFwCD = 1.0 - out.probRECD;
  out.label = out.probRECD >= out.probFwCD ? Label::RECD : Label::FwCD;
  return out;
}

namespace detail {

double recd_fraction(const ClassCounts& counts) noexcept {
  const std::size_t n = counts[0] + counts[1];
  return n == 0 ? 0.5 : static_cast<double>(counts[index_of(Label::RECD)]) / static_cast<double>(n);
}

Label majority(const ClassCounts& counts) noexcept {
  return counts[index_of(Label::RECD)] >= counts[index_of(Label::FwCD)] ? Label::RECD : Label::FwCD;
}

}  // namespace detail

namespace {

std::vector<std::vector<double>> normalized_rows(const Dataset& ds, const NormStats& stats) {
  std::vector<std::vector<double>> rows;
  rows.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) rows.push_back(apply_norm(stats, ds.row(i)));
  return rows;
}

NormStats fit_all(const Dataset& ds) {
  std::vector<std::size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), 0);
  return fit_norm(ds.features(), rows);
}

}  // namespace

TrainedModel train(const ClassifierSpec& spec, const Dataset& ds, std::uint64_t seed) {
  check_spec(spec);
  if (ds.empty()) throw Error(ErrorCode::InvalidArgument, "cannot train on an empty dataset");
  const auto counts = ds.class_counts();
  const bool single_class = counts[0] == 0 || counts[1] == 0;
  if (single_class && spec.kind != ClassifierKind::ZeroR && spec.kind != ClassifierKind::Knn) {
    throw Error(ErrorCode::SingleClassDataset,
                std::string(to_string(spec.kind)) + " needs both FwCD and RECD rows");
  }

  TrainedModel model;
  model.spec = spec;
  model.seed = seed;
  model.schema = ds.schema();

  using K = ClassifierKind;
  switch (spec.kind) {
    case K::ZeroR:
      model.structure = detail::train_zero_r(ds);
      break;
    case K::OneR:
      model.structure = detail::train_one_r(ds, spec.hp.oneRMinBucket);
      break;
    case K::NaiveBayes:
      model.structure = detail::train_naive_bayes(ds);
      break;
    case K::LogisticRegression: {
      model.norm = fit_all(ds);
      model.structure = detail::train_logistic(normalized_rows(ds, *model.norm), ds.labels(),
                                               spec.hp.logisticRidge, spec.hp.logisticMaxIterations);
      break;
    }
    case K::Knn:
      model.norm = fit_all(ds);
      model.structure = detail::train_knn(normalized_rows(ds, *model.norm), ds.labels(), spec.hp.knnK);
      break;
    case K::DecisionStump:
      model.structure = StumpModel{detail::train_stump(ds)};
      break;
    case K::RandomTree: {
      std::vector<std::size_t> rows(ds.size());
      std::iota(rows.begin(), rows.end(), 0);
      model.structure = RandomTreeModel{detail::train_random_tree(
          ds, rows, detail::resolved_features_per_node(spec.hp, ds.feature_count()), seed)};
      break;
    }
    case K::RandomForest:
      model.structure = detail::train_forest(ds, spec.hp, seed);
      break;
    case K::DecisionTable:
      model.structure = detail::train_decision_table(ds, spec.hp.decisionTableStale);
      break;
  }
  return model;
}

Prediction predict_proba(const TrainedModel& model, std::span<const double> row) {
  if (row.size() != model.schema.size()) {
    throw Error(ErrorCode::SchemaMismatch, "row has " + std::to_string(row.size()) + " values, model expects " +
                                               std::to_string(model.schema.size()));
  }
  std::vector<double> scaled;
  if (model.norm) {
    scaled = apply_norm(*model.norm, row);
    row = scaled;
  }
  const double p = std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroRModel>) return detail::zero_r_recd(m);
        if constexpr (std::is_same_v<T, OneRModel>) return detail::one_r_recd(m, row);
        if constexpr (std::is_same_v<T, NaiveBayesModel>) return detail::naive_bayes_recd(m, row);
        if constexpr (std::is_same_v<T, LogisticModel>) return detail::logistic_recd(m, row);
        if constexpr (std::is_same_v<T, KnnModel>) return detail::knn_recd(m, row);
        if constexpr (std::is_same_v<T, StumpModel>) return detail::tree_recd(m.tree, row);
        if constexpr (std::is_same_v<T, RandomTreeModel>) return detail::tree_recd(m.tree, row);
        if constexpr (std::is_same_v<T, ForestModel>) return detail::forest_recd(m, row);
        if constexpr (std::is_same_v<T, DecisionTableModel>) return detail::decision_table_recd(m, row);
      },
      model.structure);
  return Prediction::from_recd_probability(p);
}

}  // namespace cdprov
