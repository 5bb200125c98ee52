#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "conescal/cone.hpp"
#include "conescal/vector.hpp"

namespace conescal {

// A feasible/infeasible bracket for the monotone predicate r -> y <=_a r*e:
// lo is infeasible, hi is feasible, and feasibility is upward closed on
// [lo, hi], so the infimum lies in (lo, hi].
struct Bracket {
  double lo;
  double hi;
};

// Nonlinear scalarization along an interior direction e of a cone P:
//
//   xi_e(y) = inf { r in R : y <=_a r*e }.
//
// xi() evaluates the infimum in closed form per cone family; xi_oracle()
// evaluates the same quantity by bisection of the membership predicate and
// exists as an independent correctness witness (and as the fallback for any
// future cone family without a closed form). The two routes share nothing
// but the cone's membership test.
class Scalarizer {
 public:
  Scalarizer(Cone cone, Vector e) : cone_(std::move(cone)), e_(std::move(e)) {
    detail::check_dim(cone_.dim(), e_, "scalarization direction e");
    detail::check_finite(e_, "scalarization direction e");
    detail::require(cone_.contains_interior(e_),
                    "scalarization direction e must lie in the algebraic interior of the cone");
  }

  const Cone& cone() const { return cone_; }
  const Vector& direction() const { return e_; }

  // Some lambda > 0 with y <=_a lambda*e, found by doubling from 1.
  // Termination is guaranteed for a genuinely interior e; the overflow guard
  // flags a malformed cone/e pair.
  double upper_bound(const Vector& y) const {
    check_arg(y);
    double lambda = 1.0;
    while (!cone_.leq(y, lambda * e_)) {
      lambda *= 2.0;
      if (!std::isfinite(lambda))
        throw std::runtime_error(
            "conescal: scalarization upper bound diverged (malformed cone/e pair)");
    }
    return lambda;
  }

  // Some alpha with NOT y <=_a alpha*e, found by doubling downward from 0
  // (starting below upper_bound when that is already nonpositive). The
  // overflow guard fires only when the feasible set is unbounded below,
  // which indicates a non-pointed cone.
  double lower_bound(const Vector& y) const {
    check_arg(y);
    const double ub = upper_bound(y);
    double alpha = 0.0;
    if (ub <= 0.0) {
      alpha = -1.0;
      while (alpha >= ub) alpha *= 2.0;
    }
    while (cone_.leq(y, alpha * e_)) {
      alpha = (alpha == 0.0) ? -1.0 : alpha * 2.0;
      if (!std::isfinite(alpha))
        throw std::runtime_error(
            "conescal: scalarization is unbounded below (cone is not pointed)");
    }
    return alpha;
  }

  Bracket bracket(const Vector& y) const { return Bracket{lower_bound(y), upper_bound(y)}; }

  // Bisection of the monotone membership predicate on [lower_bound,
  // upper_bound] down to the absolute tolerance tol.
  double xi_oracle(const Vector& y, double tol = kBisectionTol) const {
    detail::require(tol > 0.0, "bisection tolerance must be positive");
    Bracket b = bracket(y);
    while (b.hi - b.lo > tol) {
      const double mid = 0.5 * (b.lo + b.hi);
      if (cone_.leq(y, mid * e_))
        b.hi = mid;
      else
        b.lo = mid;
    }
    return 0.5 * (b.lo + b.hi);
  }

  // Closed-form xi_e(y) per cone family.
  double xi(const Vector& y) const {
    check_arg(y);
    return xi_closed(cone_, e_, y);
  }

 private:
  void check_arg(const Vector& y) const {
    detail::check_dim(cone_.dim(), y, "scalarization argument");
    detail::check_finite(y, "scalarization argument");
  }

  static double xi_closed(const Cone& cone, const Vector& e, const Vector& y) {
    switch (cone.kind()) {
      case ConeKind::Orthant:
        return (y.array() / e.array()).maxCoeff();
      case ConeKind::Halfspace: {
        const Matrix& a = cone.halfspace_rows();
        // All <a_i, e> are strictly positive because e is interior.
        return ((a * y).array() / (a * e).array()).maxCoeff();
      }
      case ConeKind::SecondOrder:
        return xi_soc(e, y);
      case ConeKind::Product: {
        double r = -std::numeric_limits<double>::infinity();
        Index off = 0;
        for (const Cone& f : cone.factors()) {
          r = std::max(r, xi_closed(f, e.segment(off, f.dim()), y.segment(off, f.dim())));
          off += f.dim();
        }
        return r;
      }
    }
    return 0.0;
  }

  // Smallest r with ||r*eb - yb|| <= r*en - yn, where (eb, en) and (yb, yn)
  // split off the last coordinate. Squaring gives the quadratic
  //   (en^2 - |eb|^2) r^2 - 2 (en*yn - <eb,yb>) r + (yn^2 - |yb|^2) >= 0
  // with positive leading coefficient (e is interior), and the side
  // condition r*en >= yn selects the upper root. The discriminant is
  // nonnegative in exact arithmetic; tiny negatives are rounding and get
  // clamped.
  static double xi_soc(const Vector& e, const Vector& y) {
    const Index n = e.size();
    const auto eb = e.head(n - 1);
    const auto yb = y.head(n - 1);
    const double en = e(n - 1);
    const double yn = y(n - 1);

    const double a = en * en - eb.dot(eb);
    const double b = en * yn - eb.dot(yb);
    const double c = yn * yn - yb.dot(yb);

    double disc = b * b - a * c;
    if (disc < 0.0) {
      const double scale = std::max(1.0, std::max(b * b, std::abs(a * c)));
      if (disc < -1e-12 * scale)
        throw std::runtime_error("conescal: second-order scalarization discriminant is negative");
      disc = 0.0;
    }
    return (b + std::sqrt(disc)) / a;
  }

  Cone cone_;
  Vector e_;
};

}  // namespace conescal
