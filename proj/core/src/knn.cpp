#include "otflow/knn.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "otflow/parallel.hpp"

namespace otflow {

NeighborTable knn(const PointCloud& cloud, const PointCloud& queries, Index m) {
  const Index n = cloud.size();
  if (m < 1 || m > n) {
    throw std::invalid_argument("knn: need 1 <= m <= cloud size");
  }
  NeighborTable::IndexMatrix indices(queries.size(), m);
  parallel_for(0, queries.size(), [&](Index qi) {
    const Vec3 query = queries.point(qi);
    std::vector<std::pair<double, Index>> dist(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
      dist[static_cast<std::size_t>(j)] = {squared_distance(query, cloud.point(j)), j};
    }
    std::partial_sort(dist.begin(), dist.begin() + m, dist.end());
    for (Index k = 0; k < m; ++k) {
      indices(qi, k) = dist[static_cast<std::size_t>(k)].second;
    }
  });
  return NeighborTable(std::move(indices));
}

Eigen::MatrixXd pairwise_sq_dist(const PointCloud& p, const PointCloud& q) {
  Eigen::MatrixXd out(p.size(), q.size());
  parallel_for(0, p.size(), [&](Index i) {
    const Vec3 pi = p.point(i);
    for (Index j = 0; j < q.size(); ++j) {
      out(i, j) = squared_distance(pi, q.point(j));
    }
  });
  return out;
}

}  // namespace otflow
