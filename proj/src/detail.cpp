#include "detail.hpp"

#include <algorithm>
#include <cmath>

namespace stochord::detail {

std::vector<double> boundaries_of(const std::vector<double>& points) {
  std::vector<double> out;
  out.reserve(points.size() + 1);
  if (points.empty()) return out;
  const double span = points.back() - points.front();
  const double pad = std::max(1.0, span);
  out.push_back(points.front() - pad);
  for (std::size_t i = 1; i < points.size(); ++i) {
    out.push_back(points[i - 1] + (points[i] - points[i - 1]) / 2.0);
  }
  out.push_back(points.back() + pad);
  return out;
}

}  // namespace stochord::detail
