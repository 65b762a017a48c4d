#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cdprov/dataset.hpp"

namespace cdprov {

/// Enumeration order is also the row order of rendered reports.
enum class ClassifierKind {
  ZeroR,
  OneR,
  NaiveBayes,
  LogisticRegression,
  Knn,
  DecisionStump,
  RandomTree,
  RandomForest,
  DecisionTable,
};

inline constexpr std::array kAllClassifierKinds{
    ClassifierKind::ZeroR,         ClassifierKind::OneR,       ClassifierKind::NaiveBayes,
    ClassifierKind::LogisticRegression, ClassifierKind::Knn,   ClassifierKind::DecisionStump,
    ClassifierKind::RandomTree,    ClassifierKind::RandomForest, ClassifierKind::DecisionTable,
};

/// Identifier used on the command line and in model files, e.g. "random_forest".
std::string_view to_string(ClassifierKind kind) noexcept;
std::optional<ClassifierKind> parse_classifier_kind(std::string_view text) noexcept;
/// Human-readable row title, e.g. "Random Forest".
std::string display_name(ClassifierKind kind, int knnK = 5);

struct Hyperparameters {
  int knnK = 5;
  int forestTrees = 100;
  bool forestBootstrap = true;
  int oneRMinBucket = 6;
  double logisticRidge = 1e-8;
  int logisticMaxIterations = 200;
  int featuresPerNode = 0;  // 0: floor(log2(F)) + 1
  int decisionTableStale = 5;
  unsigned threads = 1;     // forest construction only

  bool operator==(const Hyperparameters&) const = default;
};

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::ZeroR;
  Hyperparameters hp;

  bool operator==(const ClassifierSpec&) const = default;
};

/// Throws InvalidArgument for non-positive hyperparameters.
void check_spec(const ClassifierSpec& spec);

/// probRECD + probFwCD == 1; RECD wins exact ties.
struct Prediction {
  double probRECD = 0;
  double probFwCD = 0;
  Label label = Label::RECD;

  static Prediction from_recd_probability(double p) noexcept;

  bool operator==(const Prediction&) const = default;
};

// ---- learned structures --------------------------------------------------

struct ZeroRModel {
  ClassCounts counts{};
};

/// A single-feature rule: value v selects bucket #{t in thresholds : v > t}.
struct OneRModel {
  std::size_t feature = 0;
  std::vector<double> thresholds;
  std::vector<ClassCounts> buckets;
  std::size_t trainingErrors = 0;
};

struct NaiveBayesModel {
  struct Gaussian {
    double mean = 0;
    double variance = 1;
  };
  ClassCounts classCounts{};
  std::vector<bool> nominal;  // per feature: two-level boolean
  /// gaussians[feature][label] for numeric features.
  std::vector<std::array<Gaussian, kLabelCount>> gaussians;
  /// levelCounts[feature][label] = {#false, #true} for boolean features.
  std::vector<std::array<std::array<std::size_t, 2>, kLabelCount>> levelCounts;
};

/// weights[0] is the intercept; weights[1 + f] multiplies normalized feature f.
struct LogisticModel {
  std::vector<double> weights;
  int iterations = 0;
  double gradientNorm = 0;
};

struct KnnModel {
  int k = 5;
  std::vector<std::vector<double>> exemplars;  // normalized
  std::vector<Label> labels;
};

/// Internal nodes route v <= threshold left; leaves have feature == -1.
struct TreeNode {
  int feature = -1;
  double threshold = 0;
  int left = -1;
  int right = -1;
  ClassCounts counts{};

  bool is_leaf() const noexcept { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  const TreeNode& leaf_for(std::span<const double> row) const;
  bool operator==(const DecisionTree&) const = default;
};

struct StumpModel {
  DecisionTree tree;
};

struct RandomTreeModel {
  DecisionTree tree;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
};

struct DecisionTableModel {
  std::vector<std::size_t> features;         // selected subset, ascending
  std::vector<std::vector<double>> cuts;     // per selected feature; empty for booleans
  std::vector<bool> nominal;                 // per selected feature
  std::map<std::vector<std::size_t>, ClassCounts> cells;
  ClassCounts global{};
  double looAccuracy = 0;
};

using ModelStructure = std::variant<ZeroRModel, OneRModel, NaiveBayesModel, LogisticModel, KnnModel,
                                    StumpModel, RandomTreeModel, ForestModel, DecisionTableModel>;

/// Immutable once trained; safe to share across threads.
struct TrainedModel {
  ClassifierSpec spec;
  std::uint64_t seed = 0;
  std::vector<FeatureSpec> schema;
  std::optional<NormStats> norm;
  ModelStructure structure;
};

/// Trains `spec` on `ds`. Deterministic in (spec, ds, seed).
/// Throws SingleClassDataset when only one label is present, except for
/// zero_r and knn, which are well defined on a single class.
TrainedModel train(const ClassifierSpec& spec, const Dataset& ds, std::uint64_t seed);

/// Throws SchemaMismatch when the row width differs from the model schema.
Prediction predict_proba(const TrainedModel& model, std::span<const double> row);

// ---- persistence ---------------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

std::string model_to_json(const TrainedModel& model);
/// Throws CorruptModel or VersionMismatch.
TrainedModel model_from_json(std::string_view text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

// ---- per-kind entry points (rows already normalized where applicable) ----

namespace detail {

ZeroRModel train_zero_r(const Dataset& ds);
double zero_r_recd(const ZeroRModel& m);

OneRModel train_one_r(const Dataset& ds, int minBucket);
double one_r_recd(const OneRModel& m, std::span<const double> row);

NaiveBayesModel train_naive_bayes(const Dataset& ds);
double naive_bayes_recd(const NaiveBayesModel& m, std::span<const double> row);

struct LossAndGradient {
  double loss = 0;
  std::vector<double> gradient;
};
/// Ridge-penalized negative log-likelihood over already-normalized rows;
/// the intercept is not penalized.
LossAndGradient logistic_loss(std::span<const double> weights, const std::vector<std::vector<double>>& rows,
                              std::span<const Label> labels, double ridge);
LogisticModel train_logistic(const std::vector<std::vector<double>>& rows, std::span<const Label> labels,
                             double ridge, int maxIterations);
double logistic_recd(const LogisticModel& m, std::span<const double> row);

KnnModel train_knn(std::vector<std::vector<double>> rows, std::vector<Label> labels, int k);
double knn_recd(const KnnModel& m, std::span<const double> row);

int resolved_features_per_node(const Hyperparameters& hp, std::size_t featureCount);
DecisionTree train_stump(const Dataset& ds);
/// Grows on ds rows `rows` (duplicates allowed, as in a bootstrap sample).
DecisionTree train_random_tree(const Dataset& ds, std::span<const std::size_t> rows, int featuresPerNode,
                               std::uint64_t seed);
ForestModel train_forest(const Dataset& ds, const Hyperparameters& hp, std::uint64_t seed);
double tree_recd(const DecisionTree& tree, std::span<const double> row);
double forest_recd(const ForestModel& m, std::span<const double> row);

DecisionTableModel train_decision_table(const Dataset& ds, int staleLimit);
double decision_table_recd(const DecisionTableModel& m, std::span<const double> row);

/// Fraction of RECD in counts, or 0.5 on an empty count.
double recd_fraction(const ClassCounts& counts) noexcept;
/// Majority label, RECD on ties.
Label majority(const ClassCounts& counts) noexcept;

}  // namespace detail

}  // namespace cdprov
