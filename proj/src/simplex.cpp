#include "vrrw/simplex.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace vrrw {

namespace {

void check_simplex(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw std::invalid_argument("empty simplex point");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i]))
      throw std::invalid_argument("simplex coordinates must be nonnegative");
    sum += x[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("simplex coordinates must sum to 1");
}

}  // namespace

SimplexPoint::SimplexPoint(Eigen::VectorXd values) : x_(std::move(values)) {
  check_simplex(x_);
}

SimplexPoint::SimplexPoint(const std::vector<double>& values)
    : SimplexPoint(Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                     static_cast<Eigen::Index>(values.size()))) {}

SimplexPoint SimplexPoint::normalized(Eigen::VectorXd values) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw std::invalid_argument("cannot normalize negative coordinates");
    sum += values[i];
  }
  if (!(sum > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
  values /= sum;
  return SimplexPoint(std::move(values));
}

VertexSet SimplexPoint::support() const {
  VertexSet S;
  for (Eigen::Index i = 0; i < x_.size(); ++i)
    if (x_[i] > kSupportEpsilon) S.push_back(static_cast<int>(i));
  return S;
}

std::string SimplexPoint::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  char buf[64];
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", x_[i]);
    arr.push_back(std::string(buf));
  }
  return arr.dump();
}

SimplexPoint SimplexPoint::from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed simplex JSON: ") + e.what());
  }
  if (!arr.is_array()) throw std::invalid_argument("simplex point must be a JSON array");
  Eigen::VectorXd x(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].is_string())
      x[static_cast<Eigen::Index>(i)] = std::stod(arr[i].get<std::string>());
    else
      x[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return SimplexPoint(std::move(x));
}

}  // namespace vrrw
