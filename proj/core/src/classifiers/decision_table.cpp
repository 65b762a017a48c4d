#include <algorithm>
#include <bitset>
#include <map>
#include <set>

#include "cdprov/classifiers.hpp"
#include "cdprov/error.hpp"
#include "cdprov/infogain.hpp"

namespace cdprov::detail {
namespace {

constexpr std::size_t kMaxFeatures = 64;
using Subset = std::bitset<kMaxFeatures>;

struct Binned {
  std::vector<std::vector<std::size_t>> bins;  // bins[feature][row]
  std::vector<std::vector<double>> cuts;
};

Binned bin_features(const Dataset& ds) {
  Binned out;
  out.bins.resize(ds.feature_count());
  out.cuts.resize(ds.feature_count());
  for (std::size_t f = 0; f < ds.feature_count(); ++f) {
    const auto column = ds.column(f);
    if (ds.schema()[f].kind != FeatureKind::Boolean) out.cuts[f] = discretize_mdl(column, ds.labels());
    auto& b = out.bins[f];
    b.resize(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      b[i] = ds.schema()[f].kind == FeatureKind::Boolean ? (column[i] != 0.0 ? 1 : 0)
                                                          : bin_of(column[i], out.cuts[f]);
    }
  }
  return out;
}

std::vector<std::size_t> members(const Subset& s, std::size_t features) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < features; ++f)
    if (s.test(f)) out.push_back(f);
  return out;
}

std::vector<std::size_t> key_of(const Binned& binned, const std::vector<std::size_t>& features, std::size_t row) {
  std::vector<std::size_t> key(features.size());
  for (std::size_t j = 0; j < features.size(); ++j) key[j] = binned.bins[features[j]][row];
  return key;
}

/// Leave-one-out accuracy of the table keyed on `subset`.
double loo_accuracy(const Dataset& ds, const Binned& binned, const Subset& subset) {
  const auto features = members(subset, ds.feature_count());
  std::map<std::vector<std::size_t>, ClassCounts> cells;
  std::vector<std::vector<std::size_t>> keys(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    keys[i] = key_of(binned, features, i);
    ++cells[keys[i]][index_of(ds.label(i))];
  }
  const ClassCounts global = ds.class_counts();

  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto c = index_of(ds.label(i));
    ClassCounts cell = cells[keys[i]];
    --cell[c];
    Label predicted;
    if (cell[0] + cell[1] > 0) {
      predicted = majority(cell);
    } else {
      ClassCounts rest = global;
      --rest[c];
      predicted = majority(rest);
    }
    correct += predicted == ds.label(i);
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

struct Candidate {
  double score;
  std::uint64_t order;  // insertion sequence; earlier wins ties
  Subset subset;

  bool operator<(const Candidate& o) const {
    if (score != o.score) return score > o.score;
    return order < o.order;
  }
};

}  // namespace

DecisionTableModel train_decision_table(const Dataset& ds, int staleLimit) {
  if (ds.feature_count() > kMaxFeatures) {
    throw Error(ErrorCode::InvalidArgument, "decision_table supports at most 64 features");
  }
  const Binned binned = bin_features(ds);

  // Best-first forward search; stop after staleLimit expansions in a row
  // fail to improve on the best subset found so far.
  std::set<Candidate> open;
  std::set<std::string> visited;
  std::uint64_t sequence = 0;
  Subset best_subset;
  double best_score = loo_accuracy(ds, binned, best_subset);
  open.insert({best_score, sequence++, best_subset});
  visited.insert(best_subset.to_string());

  int stale = 0;
  while (!open.empty() && stale < staleLimit) {
    const Candidate head = *open.begin();
    open.erase(open.begin());
    bool improved = false;
    for (std::size_t f = 0; f < ds.feature_count(); ++f) {
      if (head.subset.test(f)) continue;
      Subset child = head.subset;
      child.set(f);
      if (!visited.insert(child.to_string()).second) continue;
      const double score = loo_accuracy(ds, binned, child);
      open.insert({score, sequence++, child});
      if (score > best_score) {
        best_score = score;
        best_subset = child;
        improved = true;
      }
    }
    stale = improved ? 0 : stale + 1;
  }

  DecisionTableModel m;
  m.features = members(best_subset, ds.feature_count());
  for (auto f : m.features) {
    m.cuts.push_back(binned.cuts[f]);
    m.nominal.push_back(ds.schema()[f].kind == FeatureKind::Boolean);
  }
  for (std::size_t i = 0; i < ds.size(); ++i) ++m.cells[key_of(binned, m.features, i)][index_of(ds.label(i))];
  m.global = ds.class_counts();
  m.looAccuracy = best_score;
  return m;
}

double decision_table_recd(const DecisionTableModel& m, std::span<const double> row) {
  std::vector<std::size_t> key(m.features.size());
  for (std::size_t j = 0; j < m.features.size(); ++j) {
    const double v = row[m.features[j]];
    key[j] = m.nominal[j] ? (v != 0.0 ? 1 : 0) : bin_of(v, m.cuts[j]);
  }
  const auto it = m.cells.find(key);
  return recd_fraction(it != m.cells.end() ? it->second : m.global);
}

}  // namespace cdprov::detail
