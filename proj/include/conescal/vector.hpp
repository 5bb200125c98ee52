#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace conescal {

// All vector quantities live in R^n with double coordinates. Dimensions are
// fixed per space; every public operation rejects mismatched or non-finite
// input instead of propagating NaNs.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Relative membership tolerance: an inequality g(x) >= 0 is accepted at
// g(x) >= -kMembershipTol*(1 + ||x||_inf) and counted strict only at
// g(x) > +kMembershipTol*(1 + ||x||_inf). The same band is used by every
// membership, order, and ball predicate so that boundary classifications
// never flip between call sites.
inline constexpr double kMembershipTol = 1e-12;

// Rank-deficiency threshold for halfspace pointedness: sigma_i is treated as
// zero when sigma_i <= kRankTolFactor * sigma_max.
inline constexpr double kRankTolFactor = 1e-10;

// Default absolute tolerance of the bisection oracle.
inline constexpr double kBisectionTol = 1e-9;

// Slack used by sample-based axiom checks.
inline constexpr double kCheckSlack = 1e-9;

// Half-width of the boundary band around |d_e - r| inside which ball
// classifications are considered numerically ambiguous.
inline constexpr double kBoundaryBand = 1e-9;

// Cap on exhaustive triangle-inequality enumeration; beyond it a seeded
// random subset of this size is checked instead.
inline constexpr std::size_t kTripleCap = 100000;

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("conescal: " + msg);
}

inline void check_finite(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string("conescal: non-finite coordinate in ") + what);
}

inline void check_dim(Index expected, const Vector& v, const char* what) {
  if (v.size() != expected)
    throw std::invalid_argument(std::string("conescal: dimension mismatch for ") + what +
                                " (expected " + std::to_string(expected) + ", got " +
                                std::to_string(v.size()) + ")");
}

}  // namespace detail

// Scale factor 1 + ||x||_inf of the relative tolerance band.
inline double membership_scale(const Vector& x) {
  return x.size() == 0 ? 1.0 : 1.0 + x.lpNorm<Eigen::Infinity>();
}

// x is the zero vector up to the membership band.
inline bool is_zero_vector(const Vector& x) {
  return x.size() == 0 || x.lpNorm<Eigen::Infinity>() <= kMembershipTol * membership_scale(x);
}

}  // namespace conescal
