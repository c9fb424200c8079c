#include "otflow/flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "otflow/knn.hpp"
#include "otflow/parallel.hpp"

namespace otflow {

FlowEstimate interpolate_flow(const TransportPlan& plan, const PointCloud& p, const PointCloud& q,
                              double tau) {
  const Index n = p.size();
  if (plan.size() != n || q.size() != n) {
    throw std::invalid_argument("interpolate_flow: plan and clouds must agree in size");
  }
  Coords vectors(n, 3);
  std::atomic<Index> fallbacks{0};
  parallel_for(0, n, [&](Index i) {
    double row_mass = 0.0;
    Vec3 barycentre = Vec3::Zero();
    for (Index j = 0; j < n; ++j) {
      const double mass = plan.mass(i, j);
      row_mass += mass;
      barycentre += mass * q.point(j);
    }
    if (row_mass > tau) {
      vectors.row(i) = (barycentre / row_mass - p.point(i)).transpose();
    } else {
      vectors.row(i).setZero();
      fallbacks.fetch_add(1, std::memory_order_relaxed);
    }
  });
  return FlowEstimate{FlowField(std::move(vectors)), std::nullopt, fallbacks.load()};
}

FlowEstimate attention_flow(const CostMatrix& cost, double epsilon, const PointCloud& p,
                            const PointCloud& q, double tau) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("attention_flow: epsilon must be positive");
  }
  const Index n = p.size();
  if (cost.size() != n || q.size() != n) {
    throw std::invalid_argument("attention_flow: cost and clouds must agree in size");
  }
  Coords vectors(n, 3);
  std::atomic<Index> fallbacks{0};
  parallel_for(0, n, [&](Index i) {
    const Vec3 pi = p.point(i);
    double total = 0.0;
    Vec3 weighted = Vec3::Zero();
    for (Index j = 0; j < n; ++j) {
      if (cost.gated(i, j)) {
        continue;
      }
      const double w = std::exp(std::clamp(-cost.value(i, j) / epsilon, -700.0, 700.0));
      total += w;
      weighted += w * (q.point(j) - pi);
    }
    if (total > tau) {
      vectors.row(i) = (weighted / total).transpose();
    } else {
      vectors.row(i).setZero();
      fallbacks.fetch_add(1, std::memory_order_relaxed);
    }
  });
  return FlowEstimate{FlowField(std::move(vectors)), std::nullopt, fallbacks.load()};
}

FlowField smooth_refine(const FlowField& raw, const PointCloud& p, Index m, int rounds) {
  const Index n = p.size();
  if (raw.size() != n) {
    throw std::invalid_argument("smooth_refine: flow and cloud must agree in size");
  }
  if (m > n || m < 1) {
    throw std::invalid_argument("smooth_refine: need 1 <= m <= cloud size");
  }
  if (rounds < 0) {
    throw std::invalid_argument("smooth_refine: rounds must be non-negative");
  }
  if (rounds == 0) {
    return raw;
  }
  const NeighborTable neighbors = knn(p, p, m);
  Coords current = raw.data();
  Coords next(n, 3);
  for (int r = 0; r < rounds; ++r) {
    parallel_for(0, n, [&](Index i) {
      Vec3 mean = Vec3::Zero();
      for (Index k = 0; k < m; ++k) {
        mean += current.row(neighbors.neighbor(i, k));
      }
      next.row(i) = (mean / static_cast<double>(m)).transpose();
    });
    current.swap(next);
  }
  return FlowField(std::move(current));
}

double masked_l1(const FlowField& f_est, const FlowField& f_gt, const ValidityMask& mask) {
  const Index n = f_est.size();
  if (f_gt.size() != n || mask.size() != n) {
    throw std::invalid_argument("masked_l1: flows and mask must agree in length");
  }
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (!mask[i]) {
      continue;
    }
    sum += (f_est.vector(i) - f_gt.vector(i)).cwiseAbs().sum();
  }
  return sum / 3.0;
}

}  // namespace otflow
