#ifndef LTC_VECTOR_FIELD_HPP
#define LTC_VECTOR_FIELD_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ltc {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
};

// Axis-aligned box in R^n.
using Box = std::vector<Interval>;

bool box_contains(const Box& box, const Eigen::VectorXd& x) noexcept;

/// Parses "lo:hi,lo:hi,...". Throws ParseError with a column on failure
/// and on lo > hi.
Box parse_box(const std::string& text);

/// An autonomous vector field x' = F(x) of dimension n, C^1 on `domain`.
struct VectorField {
  std::size_t dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
  Box domain;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return eval(x); }
};

}  // namespace ltc

#endif  // LTC_VECTOR_FIELD_HPP
