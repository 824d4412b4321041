#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vrrw/graph.hpp"

namespace vrrw {

inline constexpr double kSupportEpsilon = 1e-10;

// Point of the probability simplex over the vertex set.
class SimplexPoint {
 public:
  SimplexPoint() = default;
  // Throws std::invalid_argument unless values are nonnegative and sum to 1
  // within 1e-12.
  explicit SimplexPoint(Eigen::VectorXd values);
  explicit SimplexPoint(const std::vector<double>& values);

  // Rescales nonnegative values to sum 1 (throws if the sum is not positive).
  static SimplexPoint normalized(Eigen::VectorXd values);

  int size() const { return static_cast<int>(x_.size()); }
  double operator[](int i) const { return x_[i]; }
  const Eigen::VectorXd& values() const { return x_; }

  // Vertices with mass > 1e-10, ascending.
  VertexSet support() const;

  // JSON array of decimal strings, e.g. ["0.375","0.375","0.125","0.125","0","0"].
  std::string to_json() const;
  static SimplexPoint from_json(const std::string& text);

 private:
  Eigen::VectorXd x_;
};

}  // namespace vrrw
