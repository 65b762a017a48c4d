#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdprov/classifiers.hpp"
#include "cdprov/infogain.hpp"
#include "cdprov/parallel.hpp"
#include "cdprov/random.hpp"

namespace cdprov {

const TreeNode& DecisionTree::leaf_for(std::span<const double> row) const {
  const TreeNode* n = &nodes.front();
  while (!n->is_leaf()) {
    n = &nodes[static_cast<std::size_t>(row[static_cast<std::size_t>(n->feature)] <= n->threshold ? n->left
                                                                                                     : n->right)];
  }
  return *n;
}

}  // namespace cdprov

namespace cdprov::detail {
namespace {

constexpr double kMinGain = 1e-12;
constexpr std::uint64_t kBootstrapStream = 0xB0075;

struct Split {
  std::size_t feature = 0;
  double threshold = 0;
  double entropy = INFINITY;  // weighted over both sides
};

ClassCounts count_rows(const Dataset& ds, std::span<const std::size_t> rows) {
  ClassCounts c{};
  for (auto r : rows) ++c[index_of(ds.label(r))];
  return c;
}

double weighted_entropy(const ClassCounts& c) {
  const std::size_t n = c[0] + c[1];
  return n == 0 ? 0.0 : static_cast<double>(n) * entropy(c);
}

/// Best `value <= threshold` split of one feature, thresholds at midpoints
/// between consecutive distinct values. Ties keep the lowest threshold.
std::optional<Split> best_split(const Dataset& ds, std::span<const std::size_t> rows, std::size_t feature,
                                const ClassCounts& all) {
  std::vector<std::pair<double, Label>> items;
  items.reserve(rows.size());
  for (auto r : rows) items.emplace_back(ds.at(r, feature), ds.label(r));
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const auto n = static_cast<double>(rows.size());
  std::optional<Split> best;
  ClassCounts left{};
  for (std::size_t i = 0; i + 1 < items.size(); ++i) {
    ++left[index_of(items[i].second)];
    if (items[i].first == items[i + 1].first) continue;
    const ClassCounts right{all[0] - left[0], all[1] - left[1]};
    const double e = (weighted_entropy(left) + weighted_entropy(right)) / n;
    if (!best || e < best->entropy) best = Split{feature, (items[i].first + items[i + 1].first) / 2.0, e};
  }
  return best;
}

int add_leaf(DecisionTree& tree, const ClassCounts& counts) {
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, counts});
  return static_cast<int>(tree.nodes.size() - 1);
}

void partition(const Dataset& ds, std::span<const std::size_t> rows, const Split& split,
               std::vector<std::size_t>& left, std::vector<std::size_t>& right) {
  for (auto r : rows) (ds.at(r, split.feature) <= split.threshold ? left : right).push_back(r);
}

int grow(DecisionTree& tree, const Dataset& ds, std::vector<std::size_t> rows, int featuresPerNode,
         std::uint64_t seed) {
  const ClassCounts counts = count_rows(ds, rows);
  const int node = add_leaf(tree, counts);
  if (counts[0] == 0 || counts[1] == 0 || rows.size() < 2) return node;

  std::vector<std::size_t> order(ds.feature_count());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span(order));

  // Examine featuresPerNode random features; keep drawing past that budget
  // only while none of them has reduced the entropy.
  const double node_entropy = entropy(counts);
  std::optional<Split> chosen;
  std::size_t examined = 0;
  for (auto f : order) {
    if (examined >= static_cast<std::size_t>(featuresPerNode) && chosen) break;
    ++examined;
    auto s = best_split(ds, rows, f, counts);
    if (s && node_entropy - s->entropy > kMinGain && (!chosen || s->entropy < chosen->entropy)) chosen = s;
  }
  if (!chosen) return node;

  std::vector<std::size_t> left, right;
  partition(ds, rows, *chosen, left, right);
  rows.clear();
  rows.shrink_to_fit();

  const int l = grow(tree, ds, std::move(left), featuresPerNode, mix_seed(seed, 0));
  const int r = grow(tree, ds, std::move(right), featuresPerNode, mix_seed(seed, 1));
  auto& n = tree.nodes[static_cast<std::size_t>(node)];
  n.feature = static_cast<int>(chosen->feature);
  n.threshold = chosen->threshold;
  n.left = l;
  n.right = r;
  return node;
}

}  // namespace

int resolved_features_per_node(const Hyperparameters& hp, std::size_t featureCount) {
  if (hp.featuresPerNode > 0) return hp.featuresPerNode;
  return static_cast<int>(std::floor(std::log2(static_cast<double>(std::max<std::size_t>(featureCount, 1))))) + 1;
}

DecisionTree train_stump(const Dataset& ds) {
  std::vector<std::size_t> rows(ds.size());
  std::iota(rows.begin(), rows.end(), 0);
  const ClassCounts counts = count_rows(ds, rows);

  std::optional<Split> chosen;
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    auto s = best_split(ds, rows, f, counts);
    if (s && (!chosen || s->entropy < chosen->entropy)) chosen = s;
  }

  DecisionTree tree;
  add_leaf(tree, counts);
  if (!chosen) return tree;

  std::vector<std::size_t> left, right;
  partition(ds, rows, *chosen, left, right);
  tree.nodes[0].feature = static_cast<int>(chosen->feature);
  tree.nodes[0].threshold = chosen->threshold;
  tree.nodes[0].left = add_leaf(tree, count_rows(ds, left));
  tree.nodes[0].right = add_leaf(tree, count_rows(ds, right));
  return tree;
}

DecisionTree train_random_tree(const Dataset& ds, std::span<const std::size_t> rows, int featuresPerNode,
                               std::uint64_t seed) {
  DecisionTree tree;
  grow(tree, ds, std::vector<std::size_t>(rows.begin(), rows.end()), featuresPerNode, seed);
  return tree;
}

ForestModel train_forest(const Dataset& ds, const Hyperparameters& hp, std::uint64_t seed) {
  const int per_node = resolved_features_per_node(hp, ds.feature_count());
  ForestModel forest;
  forest.trees.resize(static_cast<std::size_t>(hp.forestTrees));
  parallel_for(forest.trees.size(), hp.threads, [&](std::size_t t) {
    const std::uint64_t tree_seed = mix_seed(seed, t);
    std::vector<std::size_t> rows(ds.size());
    if (hp.forestBootstrap) {
      Rng rng(mix_seed(tree_seed, kBootstrapStream));
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(ds.size()));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    forest.trees[t] = train_random_tree(ds, rows, per_node, tree_seed);
  });
  return forest;
}

double tree_recd(const DecisionTree& tree, std::span<const double> row) {
  return recd_fraction(tree.leaf_for(row).counts);
}

double forest_recd(const ForestModel& m, std::span<const double> row) {
  double sum = 0;
  for (const auto& t : m.trees) sum += tree_recd(t, row);
  return sum / static_cast<double>(m.trees.size());
}

}  // namespace cdprov::detail
