#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace otflow {

/// A cost matrix row or column is entirely gated, so no transport plan
/// can assign it any mass. Carries the offending indices.
class DegenerateCostError : public std::runtime_error {
 public:
  DegenerateCostError(std::vector<Eigen::Index> rows, std::vector<Eigen::Index> cols);

  const std::vector<Eigen::Index>& gated_rows() const { return rows_; }
  const std::vector<Eigen::Index>& gated_cols() const { return cols_; }

 private:
  std::vector<Eigen::Index> rows_;
  std::vector<Eigen::Index> cols_;
};

/// No perfect matching exists over the finite (non-gated) cost entries.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation was requested on a mask with no valid points.
class EmptyEvaluationError : public std::runtime_error {
 public:
  EmptyEvaluationError() : std::runtime_error("EmptyEvaluation: mask selects no points") {}
};

/// File could not be read, written, or parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace otflow
