#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conescal/cone_metric.hpp"
#include "conescal/vector.hpp"

namespace conescal {

// Outcome of a Banach iteration. residual is d_e(point, T(point));
// apriori_bound is the classical lambda^n/(1-lambda) * d_e(x0, x1); trace
// holds the induced step sizes d_e(x_k, x_{k+1}) in order. When the solver
// stops on max_iter, converged is false and point carries the best iterate.
template <class Point>
struct FixedPointResult {
  Point point;
  std::size_t iterations = 0;
  bool converged = false;
  double residual = 0.0;
  double apriori_bound = 0.0;
  std::vector<double> trace;
};

// Picard iteration x_{k+1} = T(x_k) for a map that is contractive with
// factor lambda in the cone metric; the vector contraction hypothesis
// implies the scalar one for d_e = xi_e o d_a, so the classical Banach
// bounds apply to the induced metric. Stops once the step size satisfies
// d_e(x_k, x_{k+1}) <= tol*(1-lambda)/lambda, which certifies
// d_e(x_{k+1}, x*) <= tol by the a-posteriori bound.
template <class Point, class Map>
FixedPointResult<Point> solve_contraction(const InducedMetric<Point>& metric, Map&& map,
                                          const Point& x0, double lambda, double tol,
                                          std::size_t max_iter) {
  detail::require(lambda > 0.0 && lambda < 1.0, "contraction factor must lie in (0, 1)");
  detail::require(tol > 0.0, "fixed point tolerance must be positive");
  detail::require(max_iter >= 1, "max_iter must be >= 1");

  const double step_threshold = tol * (1.0 - lambda) / lambda;
  FixedPointResult<Point> result;
  result.trace.reserve(64);

  Point x = x0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    Point next = map(x);
    const double step = metric.distance(x, next);
    result.trace.push_back(step);
    x = std::move(next);
    result.iterations = k;
    if (step <= step_threshold) {
      result.converged = true;
      break;
    }
  }

  result.point = std::move(x);
  result.residual = metric.distance(result.point, map(result.point));
  result.apriori_bound =
      std::pow(lambda, static_cast<double>(result.iterations)) / (1.0 - lambda) * result.trace.front();
  return result;
}

// Empirical lower bound on the Lipschitz constant of map over the supplied
// pairs: max d_e(Tx, Ty) / d_e(x, y). Useful to refute a claimed contraction
// factor; it can never certify one.
template <class Point, class Map>
double estimate_contraction_factor(const InducedMetric<Point>& metric, Map&& map,
                                   std::span<const std::pair<Point, Point>> sample_pairs) {
  detail::require(!sample_pairs.empty(), "contraction estimate needs at least one pair");
  double worst = 0.0;
  for (const auto& [x, y] : sample_pairs) {
    const double base = metric.distance(x, y);
    if (base <= 0.0)
      throw std::invalid_argument(
          "conescal: contraction estimate requires pairs at positive induced distance");
    worst = std::max(worst, metric.distance(map(x), map(y)) / base);
  }
  return worst;
}

}  // namespace conescal
