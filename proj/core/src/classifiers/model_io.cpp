#include <json.hpp>

#include "cdprov/classifiers.hpp"
#include "cdprov/error.hpp"

namespace cdprov {
namespace {

using nlohmann::json;

std::string_view kind_name(FeatureKind k) {
  switch (k) {
    case FeatureKind::Ratio: return "ratio";
    case FeatureKind::Count: return "count";
    case FeatureKind::Boolean: return "boolean";
  }
  return "ratio";
}

FeatureKind parse_feature_kind(const std::string& s) {
  if (s == "ratio") return FeatureKind::Ratio;
  if (s == "count") return FeatureKind::Count;
  if (s == "boolean") return FeatureKind::Boolean;
  throw Error(ErrorCode::CorruptModel, "unknown feature kind \"" + s + "\"");
}

json counts_json(const ClassCounts& c) { return json::array({c[0], c[1]}); }

ClassCounts counts_from(const json& j) {
  if (!j.is_array() || j.size() != kLabelCount) throw Error(ErrorCode::CorruptModel, "class counts must be [FwCD, RECD]");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

json node_json(const DecisionTree& tree, int index) {
  const auto& n = tree.nodes[static_cast<std::size_t>(index)];
  json j{{"featureIndex", n.feature}, {"threshold", n.threshold}, {"leafCounts", counts_json(n.counts)}};
  j["left"] = n.is_leaf() ? json(nullptr) : node_json(tree, n.left);
  j["right"] = n.is_leaf() ? json(nullptr) : node_json(tree, n.right);
  return j;
}

json tree_json(const DecisionTree& tree) { return node_json(tree, 0); }

int read_node(const json& j, DecisionTree& tree, std::size_t features) {
  const int index = static_cast<int>(tree.nodes.size());
  TreeNode node;
  node.feature = j.at("featureIndex").get<int>();
  node.threshold = j.at("threshold").get<double>();
  node.counts = counts_from(j.at("leafCounts"));
  tree.nodes.push_back(node);
  if (node.feature >= 0) {
    if (static_cast<std::size_t>(node.feature) >= features) {
      throw Error(ErrorCode::CorruptModel, "tree node references feature " + std::to_string(node.feature));
    }
    const int l = read_node(j.at("left"), tree, features);
    const int r = read_node(j.at("right"), tree, features);
    tree.nodes[static_cast<std::size_t>(index)].left = l;
    tree.nodes[static_cast<std::size_t>(index)].right = r;
  }
  return index;
}

DecisionTree tree_from(const json& j, std::size_t features) {
  DecisionTree tree;
  read_node(j, tree, features);
  return tree;
}

json structure_json(const ModelStructure& s) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroRModel>) {
          return {{"classCounts", counts_json(m.counts)}};
        } else if constexpr (std::is_same_v<T, OneRModel>) {
          json buckets = json::array();
          for (const auto& b : m.buckets) buckets.push_back(counts_json(b));
          return {{"featureIndex", m.feature}, {"thresholds", m.thresholds}, {"buckets", buckets},
                  {"trainingErrors", m.trainingErrors}};
        } else if constexpr (std::is_same_v<T, NaiveBayesModel>) {
          json features = json::array();
          for (std::size_t f = 0; f < m.nominal.size(); ++f) {
            if (m.nominal[f]) {
              json levels = json::array();
              for (const auto& per_class : m.levelCounts[f]) levels.push_back({per_class[0], per_class[1]});
              features.push_back({{"levelCounts", levels}});
            } else {
              json gaussians = json::array();
              for (const auto& g : m.gaussians[f]) gaussians.push_back({{"mean", g.mean}, {"variance", g.variance}});
              features.push_back({{"gaussians", gaussians}});
            }
          }
          return {{"classCounts", counts_json(m.classCounts)}, {"features", features}};
        } else if constexpr (std::is_same_v<T, LogisticModel>) {
          return {{"weights", m.weights}, {"iterations", m.iterations}, {"gradientNorm", m.gradientNorm}};
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          json labels = json::array();
          for (auto l : m.labels) labels.push_back(to_string(l));
          return {{"k", m.k}, {"exemplars", m.exemplars}, {"labels", labels}};
        } else if constexpr (std::is_same_v<T, StumpModel> || std::is_same_v<T, RandomTreeModel>) {
          return {{"tree", tree_json(m.tree)}};
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          json trees = json::array();
          for (const auto& t : m.trees) trees.push_back(tree_json(t));
          return {{"trees", trees}};
        } else {
          json cells = json::array();
          for (const auto& [key, counts] : m.cells) cells.push_back({{"key", key}, {"counts", counts_json(counts)}});
          return {{"features", m.features}, {"cuts", m.cuts}, {"nominal", m.nominal},
                  {"cells", cells}, {"globalCounts", counts_json(m.global)}, {"looAccuracy", m.looAccuracy}};
        }
      },
      s);
}

Label label_from(const json& j) {
  if (auto l = parse_label(j.get<std::string>())) return *l;
  throw Error(ErrorCode::CorruptModel, "unknown label " + j.dump());
}

ModelStructure structure_from(ClassifierKind kind, const json& j, std::size_t features) {
  using K = ClassifierKind;
  switch (kind) {
    case K::ZeroR:
      return ZeroRModel{counts_from(j.at("classCounts"))};
    case K::OneR: {
      OneRModel m;
      m.feature = j.at("featureIndex").get<std::size_t>();
      m.thresholds = j.at("thresholds").get<std::vector<double>>();
      for (const auto& b : j.at("buckets")) m.buckets.push_back(counts_from(b));
      m.trainingErrors = j.at("trainingErrors").get<std::size_t>();
      if (m.feature >= features || m.buckets.size() != m.thresholds.size() + 1) {
        throw Error(ErrorCode::CorruptModel, "inconsistent one_r rule");
      }
      return m;
    }
    case K::NaiveBayes: {
      NaiveBayesModel m;
      m.classCounts = counts_from(j.at("classCounts"));
      const auto& fs = j.at("features");
      if (fs.size() != features) throw Error(ErrorCode::CorruptModel, "naive_bayes feature count mismatch");
      m.nominal.resize(features);
      m.gaussians.resize(features);
      m.levelCounts.resize(features);
      for (std::size_t f = 0; f < features; ++f) {
        if (fs[f].contains("levelCounts")) {
          m.nominal[f] = true;
          for (std::size_t c = 0; c < kLabelCount; ++c) {
            m.levelCounts[f][c] = {fs[f]["levelCounts"].at(c).at(0).get<std::size_t>(),
                                   fs[f]["levelCounts"].at(c).at(1).get<std::size_t>()};
          }
        } else {
          for (std::size_t c = 0; c < kLabelCount; ++c) {
            const auto& g = fs[f].at("gaussians").at(c);
            m.gaussians[f][c] = {g.at("mean").get<double>(), g.at("variance").get<double>()};
          }
        }
      }
      return m;
    }
    case K::LogisticRegression: {
      LogisticModel m;
      m.weights = j.at("weights").get<std::vector<double>>();
      m.iterations = j.at("iterations").get<int>();
      m.gradientNorm = j.at("gradientNorm").get<double>();
      if (m.weights.size() != features + 1) throw Error(ErrorCode::CorruptModel, "logistic weight count mismatch");
      return m;
    }
    case K::Knn: {
      KnnModel m;
      m.k = j.at("k").get<int>();
      m.exemplars = j.at("exemplars").get<std::vector<std::vector<double>>>();
      for (const auto& l : j.at("labels")) m.labels.push_back(label_from(l));
      if (m.labels.size() != m.exemplars.size() || m.exemplars.empty() || m.k <= 0) {
        throw Error(ErrorCode::CorruptModel, "inconsistent knn exemplars");
      }
      for (const auto& e : m.exemplars)
        if (e.size() != features) throw Error(ErrorCode::CorruptModel, "knn exemplar width mismatch");
      return m;
    }
    case K::DecisionStump:
      return StumpModel{tree_from(j.at("tree"), features)};
    case K::RandomTree:
      return RandomTreeModel{tree_from(j.at("tree"), features)};
    case K::RandomForest: {
      ForestModel m;
      for (const auto& t : j.at("trees")) m.trees.push_back(tree_from(t, features));
      if (m.trees.empty()) throw Error(ErrorCode::CorruptModel, "forest has no trees");
      return m;
    }
    case K::DecisionTable: {
      DecisionTableModel m;
      m.features = j.at("features").get<std::vector<std::size_t>>();
      m.cuts = j.at("cuts").get<std::vector<std::vector<double>>>();
      m.nominal = j.at("nominal").get<std::vector<bool>>();
      for (const auto& c : j.at("cells")) {
        m.cells[c.at("key").get<std::vector<std::size_t>>()] = counts_from(c.at("counts"));
      }
      m.global = counts_from(j.at("globalCounts"));
      m.looAccuracy = j.at("looAccuracy").get<double>();
      if (m.cuts.size() != m.features.size() || m.nominal.size() != m.features.size()) {
        throw Error(ErrorCode::CorruptModel, "inconsistent decision table");
      }
      for (auto f : m.features)
        if (f >= features) throw Error(ErrorCode::CorruptModel, "decision table references feature " + std::to_string(f));
      return m;
    }
  }
  throw Error(ErrorCode::CorruptModel, "unknown classifier kind");
}

json hyperparameters_json(const Hyperparameters& hp) {
  return {{"knnK", hp.knnK},
          {"forestTrees", hp.forestTrees},
          {"forestBootstrap", hp.forestBootstrap},
          {"oneRMinBucket", hp.oneRMinBucket},
          {"logisticRidge", hp.logisticRidge},
          {"logisticMaxIterations", hp.logisticMaxIterations},
          {"featuresPerNode", hp.featuresPerNode},
          {"decisionTableStale", hp.decisionTableStale}};
}

Hyperparameters hyperparameters_from(const json& j) {
  Hyperparameters hp;
  hp.knnK = j.at("knnK").get<int>();
  hp.forestTrees = j.at("forestTrees").get<int>();
  hp.forestBootstrap = j.at("forestBootstrap").get<bool>();
  hp.oneRMinBucket = j.at("oneRMinBucket").get<int>();
  hp.logisticRidge = j.at("logisticRidge").get<double>();
  hp.logisticMaxIterations = j.at("logisticMaxIterations").get<int>();
  hp.featuresPerNode = j.at("featuresPerNode").get<int>();
  hp.decisionTableStale = j.at("decisionTableStale").get<int>();
  return hp;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
  json names = json::array();
  json kinds = json::array();
  for (const auto& f : model.schema) {
    names.push_back(f.name);
    kinds.push_back(kind_name(f.kind));
  }
  json j{{"formatVersion", kModelFormatVersion},
         {"kind", to_string(model.spec.kind)},
         {"seed", model.seed},
         {"hyperparameters", hyperparameters_json(model.spec.hp)},
         {"featureNames", names},
         {"featureKinds", kinds}};
  if (model.norm) {
    j["normStats"] = {{"min", model.norm->min}, {"max", model.norm->max}, {"scaled", model.norm->scaled}};
  }
  j["structure"] = structure_json(model.structure);
  return j.dump(1) + "\n";
}

TrainedModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptModel, std::string("not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("formatVersion")) {
      throw Error(ErrorCode::CorruptModel, "missing formatVersion");
    }
    if (!j["formatVersion"].is_number_integer() || j["formatVersion"].get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::VersionMismatch, "model formatVersion " + j["formatVersion"].dump() +
                                                  ", expected " + std::to_string(kModelFormatVersion));
    }
    TrainedModel model;
    const auto kind = parse_classifier_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::CorruptModel, "unknown classifier kind " + j.at("kind").dump());
    model.spec.kind = *kind;
    model.spec.hp = hyperparameters_from(j.at("hyperparameters"));
    model.seed = j.at("seed").get<std::uint64_t>();

    const auto names = j.at("featureNames").get<std::vector<std::string>>();
    const auto kinds = j.at("featureKinds").get<std::vector<std::string>>();
    if (names.size() != kinds.size()) throw Error(ErrorCode::CorruptModel, "featureNames and featureKinds differ");
    for (std::size_t f = 0; f < names.size(); ++f) model.schema.push_back({names[f], parse_feature_kind(kinds[f])});

    if (j.contains("normStats")) {
      const auto& n = j["normStats"];
      NormStats stats{n.at("min").get<std::vector<double>>(), n.at("max").get<std::vector<double>>(),
                      n.at("scaled").get<std::vector<bool>>()};
      if (stats.min.size() != names.size() || stats.max.size() != names.size() ||
          stats.scaled.size() != names.size()) {
        throw Error(ErrorCode::CorruptModel, "normStats width mismatch");
      }
      model.norm = std::move(stats);
    }
    model.structure = structure_from(model.spec.kind, j.at("structure"), names.size());
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptModel, e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptModel, e.what());
  }
  return model_from_json(text);
}

}  // namespace cdprov
