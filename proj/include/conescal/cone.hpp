#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conescal/vector.hpp"

namespace conescal {

class Cone;

enum class ConeKind { Orthant, Halfspace, SecondOrder, Product };

struct ConeValidationFailure {
  std::string property;  // violated property, e.g. "pointedness"
  Vector first;
  Vector second;
};

// Result of Cone::validate. pointed is decided analytically (rank test for
// halfspace cones); failures hold counterexamples from the probed axioms and
// are empty whenever pointed is true.
struct ConeValidationReport {
  bool pointed = false;
  std::optional<Vector> interior_witness;
  std::vector<ConeValidationFailure> failures;
};

namespace detail {

struct OrthantRep {
  Index n;
};

// One inequality <rows.row(i), x> >= 0 per row.
struct HalfspaceRep {
  Matrix rows;
};

// ||(x_1..x_{n-1})||_2 <= x_n.
struct SocRep {
  Index n;
};

struct ProductRep {
  std::vector<Cone> factors;
};

}  // namespace detail

// A convex cone in R^n in one of four concrete representations: the
// nonnegative orthant, a finite intersection of homogeneous halfspaces, the
// second-order (Lorentz) cone, or a block-wise product of cones.
//
// Membership is exact up to the relative band kMembershipTol (see
// vector.hpp): contains() accepts the closed form of every defining
// inequality, contains_interior() demands the strict form. The induced
// partial order is x <= y iff y - x is a member; x << y iff y - x is an
// interior member.
class Cone {
 public:
  static Cone orthant(Index n) {
    detail::require(n >= 1, "orthant dimension must be >= 1");
    return Cone(detail::OrthantRep{n});
  }

  static Cone halfspace(Matrix rows) {
    detail::require(rows.rows() >= 1 && rows.cols() >= 1, "halfspace needs a nonempty row matrix");
    detail::require(rows.allFinite(), "halfspace rows must be finite");
    return Cone(detail::HalfspaceRep{std::move(rows)});
  }

  static Cone second_order(Index n) {
    detail::require(n >= 1, "second-order cone dimension must be >= 1");
    return Cone(detail::SocRep{n});
  }

  static Cone product(std::vector<Cone> factors) {
    detail::require(!factors.empty(), "product cone needs at least one factor");
    return Cone(detail::ProductRep{std::move(factors)});
  }

  ConeKind kind() const { return static_cast<ConeKind>(rep_.index()); }

  Index dim() const {
    switch (kind()) {
      case ConeKind::Orthant:
        return std::get<detail::OrthantRep>(rep_).n;
      case ConeKind::Halfspace:
        return std::get<detail::HalfspaceRep>(rep_).rows.cols();
      case ConeKind::SecondOrder:
        return std::get<detail::SocRep>(rep_).n;
      case ConeKind::Product: {
        Index d = 0;
        for (const Cone& f : factors()) d += f.dim();
        return d;
      }
    }
    return 0;
  }

  // Structure accessors; each throws unless the cone has the matching kind.
  const Matrix& halfspace_rows() const { return std::get<detail::HalfspaceRep>(rep_).rows; }
  const std::vector<Cone>& factors() const { return std::get<detail::ProductRep>(rep_).factors; }

  // Smallest slack over all defining inequalities; nonnegative margin means
  // membership in exact arithmetic, strictly positive margin means interior.
  double margin(const Vector& x) const {
    switch (kind()) {
      case ConeKind::Orthant:
        return x.minCoeff();
      case ConeKind::Halfspace:
        return (halfspace_rows() * x).minCoeff();
      case ConeKind::SecondOrder:
        return x(x.size() - 1) - x.head(x.size() - 1).norm();
      case ConeKind::Product: {
        double m = std::numeric_limits<double>::infinity();
        Index off = 0;
        for (const Cone& f : factors()) {
          m = std::min(m, f.margin(x.segment(off, f.dim())));
          off += f.dim();
        }
        return m;
      }
    }
    return 0.0;
  }

  bool contains(const Vector& x) const {
    check_arg(x);
    return margin(x) >= -kMembershipTol * membership_scale(x);
  }

  bool contains_interior(const Vector& x) const {
    check_arg(x);
    return margin(x) > kMembershipTol * membership_scale(x);
  }

  // x <=_a y  iff  y - x in P.
  bool leq(const Vector& x, const Vector& y) const {
    check_pair(x, y);
    return contains(y - x);
  }

  // x <<_a y  iff  y - x in aint P.
  bool lt_strict(const Vector& x, const Vector& y) const {
    check_pair(x, y);
    return contains_interior(y - x);
  }

  // Canonical interior direction, when one is known analytically: the
  // all-ones vector for orthants, the axis point for second-order cones,
  // concatenation for products. Halfspace cones have no closed form and
  // return nullopt; use validate() to search for one.
  std::optional<Vector> canonical_interior() const {
    switch (kind()) {
      case ConeKind::Orthant:
        return Vector::Ones(dim());
      case ConeKind::SecondOrder: {
        Vector e = Vector::Zero(dim());
        e(dim() - 1) = 1.0;
        return e;
      }
      case ConeKind::Halfspace:
        return std::nullopt;
      case ConeKind::Product: {
        Vector e(dim());
        Index off = 0;
        for (const Cone& f : factors()) {
          auto fe = f.canonical_interior();
          if (!fe) return std::nullopt;
          e.segment(off, f.dim()) = *fe;
          off += f.dim();
        }
        return e;
      }
    }
    return std::nullopt;
  }

  // Checks pointedness analytically (orthant and second-order cones always
  // are; halfspace cones require rank(A) = n; products require every factor),
  // probes closure under addition and nonnegative scaling on probe_count
  // random member pairs, and reports an interior witness if one is found.
  // Validation never throws for cone defects; they land in the report.
  ConeValidationReport validate(int probe_count, std::uint64_t rng_seed) const {
    detail::require(probe_count >= 1, "probe_count must be >= 1");
    ConeValidationReport report;
    std::mt19937_64 rng(rng_seed);

    report.pointed = pointedness(report);
    report.interior_witness = find_interior_witness(probe_count, rng);
    if (report.interior_witness && !contains_interior(*report.interior_witness))
      report.interior_witness.reset();

    std::uniform_real_distribution<double> scale(0.0, 3.0);
    for (int i = 0; i < probe_count; ++i) {
      Vector a = sample_member(rng);
      Vector b = sample_member(rng);
      if (!contains(a + b)) report.failures.push_back({"closure_addition", a, b});
      const double lambda = scale(rng);
      if (!contains(lambda * a))
        report.failures.push_back({"closure_scaling", a, Vector::Constant(1, lambda)});
    }
    return report;
  }

  // Smallest n in [1, n_max] with x <=_a n*y, found by doubling then binary
  // refinement; nullopt when no witness exists up to n_max. Requires y to be
  // a nonzero member of the cone.
  std::optional<std::uint64_t> archimedean_witness(const Vector& x, const Vector& y,
                                                   std::uint64_t n_max) const {
    check_pair(x, y);
    detail::require(n_max >= 1, "n_max must be >= 1");
    detail::require(contains(y), "archimedean witness requires y in the cone");
    detail::require(!is_zero_vector(y), "archimedean witness requires y != 0");

    const auto feasible = [&](std::uint64_t n) {
      return contains(static_cast<double>(n) * y - x);
    };

    if (feasible(1)) return 1;
    // Doubling phase: find the first feasible probe among 2, 4, 8, ...
    // clamped at n_max.
    std::uint64_t lo = 1;  // infeasible
    std::uint64_t probe = 2;
    while (true) {
      if (probe >= n_max) {
        if (!feasible(n_max)) return std::nullopt;
        probe = n_max;
        break;
      }
      if (feasible(probe)) break;
      lo = probe;
      probe *= 2;
    }
    // Binary refinement on (lo, probe]: minimal feasible n. Feasibility is
    // monotone in n because y is a member of the cone.
    std::uint64_t hi = probe;
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (feasible(mid))
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case ConeKind::Orthant:
      case ConeKind::SecondOrder:
        return a.dim() == b.dim();
      case ConeKind::Halfspace:
        return a.halfspace_rows().rows() == b.halfspace_rows().rows() &&
               a.halfspace_rows().cols() == b.halfspace_rows().cols() &&
               a.halfspace_rows() == b.halfspace_rows();
      case ConeKind::Product:
        return a.factors() == b.factors();
    }
    return false;
  }

  std::string describe() const {
    switch (kind()) {
      case ConeKind::Orthant:
        return "orthant(" + std::to_string(dim()) + ")";
      case ConeKind::Halfspace:
        return "halfspace(" + std::to_string(halfspace_rows().rows()) + "x" +
               std::to_string(halfspace_rows().cols()) + ")";
      case ConeKind::SecondOrder:
        return "soc(" + std::to_string(dim()) + ")";
      case ConeKind::Product: {
        std::string s = "product(";
        for (std::size_t i = 0; i < factors().size(); ++i) {
          if (i) s += ", ";
          s += factors()[i].describe();
        }
        return s + ")";
      }
    }
    return {};
  }

 private:
  using Rep = std::variant<detail::OrthantRep, detail::HalfspaceRep, detail::SocRep,
                           detail::ProductRep>;

  explicit Cone(Rep rep) : rep_(std::move(rep)) {}

  void check_arg(const Vector& x) const {
    detail::check_dim(dim(), x, "cone membership");
    detail::check_finite(x, "cone membership");
  }

  void check_pair(const Vector& x, const Vector& y) const {
    check_arg(x);
    check_arg(y);
  }

  bool pointedness(ConeValidationReport& report) const {
    switch (kind()) {
      case ConeKind::Orthant:
      case ConeKind::SecondOrder:
        return true;
      case ConeKind::Halfspace: {
        const Matrix& a = halfspace_rows();
        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double sigma_max = sv.size() ? sv(0) : 0.0;
        const Index n = a.cols();
        const bool full_rank =
            sv.size() >= n && sigma_max > 0.0 && sv(n - 1) > kRankTolFactor * sigma_max;
        if (!full_rank) {
          // A null direction v has A v = 0, so both v and -v are members.
          Vector v = svd.matrixV().col(a.cols() - 1);
          report.failures.push_back({"pointedness", v, -v});
        }
        return full_rank;
      }
      case ConeKind::Product: {
        bool ok = true;
        Index off = 0;
        for (const Cone& f : factors()) {
          ConeValidationReport sub;
          if (!f.pointedness(sub)) {
            ok = false;
            for (auto& fail : sub.failures) {
              Vector lifted_a = Vector::Zero(dim());
              Vector lifted_b = Vector::Zero(dim());
              if (fail.first.size() == f.dim()) lifted_a.segment(off, f.dim()) = fail.first;
              if (fail.second.size() == f.dim()) lifted_b.segment(off, f.dim()) = fail.second;
              report.failures.push_back({fail.property, lifted_a, lifted_b});
            }
          }
          off += f.dim();
        }
        return ok;
      }
    }
    return false;
  }

  std::optional<Vector> find_interior_witness(int probe_count, std::mt19937_64& rng) const {
    switch (kind()) {
      case ConeKind::Orthant:
      case ConeKind::SecondOrder:
        return canonical_interior();
      case ConeKind::Halfspace: {
        // Random search maximizing min_i <a_i, u> over the unit sphere.
        const Matrix& a = halfspace_rows();
        std::normal_distribution<double> gauss(0.0, 1.0);
        double best_score = 0.0;
        Vector best;
        for (int t = 0; t < probe_count; ++t) {
          Vector u(a.cols());
          for (Index i = 0; i < u.size(); ++i) u(i) = gauss(rng);
          const double nrm = u.norm();
          if (nrm == 0.0) continue;
          u /= nrm;
          const double score = (a * u).minCoeff();
          if (score > best_score) {
            best_score = score;
            best = u;
          }
        }
        if (best_score > 0.0) return best;
        return std::nullopt;
      }
      case ConeKind::Product: {
        Vector e(dim());
        Index off = 0;
        for (const Cone& f : factors()) {
          auto fe = f.find_interior_witness(probe_count, rng);
          if (!fe) return std::nullopt;
          e.segment(off, f.dim()) = *fe;
          off += f.dim();
        }
        return e;
      }
    }
    return std::nullopt;
  }

  // Draws a member of the cone: constructive for orthant/second-order cones,
  // bounded rejection for halfspace cones with a witness-anchored fallback.
  Vector sample_member(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    switch (kind()) {
      case ConeKind::Orthant: {
        Vector x(dim());
        for (Index i = 0; i < x.size(); ++i) x(i) = std::abs(unit(rng));
        return x;
      }
      case ConeKind::SecondOrder: {
        Vector x(dim());
        for (Index i = 0; i + 1 < x.size(); ++i) x(i) = unit(rng);
        x(x.size() - 1) = x.head(x.size() - 1).norm() * (1.0 + pos(rng));
        return x;
      }
      case ConeKind::Halfspace: {
        for (int tries = 0; tries < 200; ++tries) {
          Vector x(dim());
          for (Index i = 0; i < x.size(); ++i) x(i) = unit(rng);
          if (margin(x) >= 0.0) return x;
        }
        std::mt19937_64 witness_rng(rng());
        auto w = find_interior_witness(64, witness_rng);
        if (w) return pos(rng) * *w;
        return Vector::Zero(dim());
      }
      case ConeKind::Product: {
        Vector x(dim());
        Index off = 0;
        for (const Cone& f : factors()) {
          x.segment(off, f.dim()) = f.sample_member(rng);
          off += f.dim();
        }
        return x;
      }
    }
    return Vector::Zero(dim());
  }

  Rep rep_;
};

}  // namespace conescal
