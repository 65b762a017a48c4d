#include <algorithm>
#include <numeric>

#include "cdprov/classifiers.hpp"

namespace cdprov::detail {

KnnModel train_knn(std::vector<std::vector<double>> rows, std::vector<Label> labels, int k) {
  return KnnModel{k, std::move(rows), std::move(labels)};
}

double knn_recd(const KnnModel& m, std::span<const double> row) {
  const std::size_t n = m.exemplars.size();
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(m.k), n);

  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double diff = m.exemplars[i][j] - row[j];
      d += diff * diff;
    }
    dist[i] = {d, i};
  }
  // Squared distance preserves the order; ties fall to the lower row index.
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

  std::size_t recd = 0;
  for (std::size_t i = 0; i < k; ++i) recd += m.labels[dist[i].second] == Label::RECD;
  return static_cast<double>(recd) / static_cast<double>(k);
}

}  // namespace cdprov::detail
