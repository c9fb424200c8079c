#include "otflow/errors.hpp"

#include <sstream>

namespace otflow {

namespace {

std::string degenerate_message(const std::vector<Eigen::Index>& rows,
                               const std::vector<Eigen::Index>& cols) {
  std::ostringstream msg;
  msg << "DegenerateCost: ";
  auto list = [&msg](const char* label, const std::vector<Eigen::Index>& idx) {
    msg << label << " [";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) {
        msg << ", ";
      }
      msg << idx[k];
    }
    msg << "]";
  };
  if (!rows.empty()) {
    list("fully gated rows", rows);
  }
  if (!rows.empty() && !cols.empty()) {
    msg << "; ";
  }
  if (!cols.empty()) {
    list("fully gated columns", cols);
  }
  return msg.str();
}

}  // namespace

DegenerateCostError::DegenerateCostError(std::vector<Eigen::Index> rows,
                                         std::vector<Eigen::Index> cols)
    : std::runtime_error(degenerate_message(rows, cols)),
      rows_(std::move(rows)),
      cols_(std::move(cols)) {}

}  // namespace otflow
