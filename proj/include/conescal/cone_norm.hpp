#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>

#include "conescal/check_report.hpp"
#include "conescal/cone.hpp"
#include "conescal/scalarizer.hpp"
#include "conescal/vector.hpp"

namespace conescal {

// A vector space X = F^k (F real or complex) with a cone-valued norm
// ||.||_a : X -> E into a cone-ordered R^n. Whether vnorm satisfies the cone
// norm axioms is sample-checked by check_norm_axioms, never assumed.
template <class Scalar = double>
class ConeNormedSpace {
 public:
  using DomainVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using VectorNormFn = std::function<Vector(const DomainVector&)>;

  ConeNormedSpace(Cone cone, Index domain_dim, VectorNormFn vnorm)
      : cone_(std::move(cone)), domain_dim_(domain_dim), vnorm_(std::move(vnorm)) {
    detail::require(domain_dim_ >= 1, "cone normed space needs domain dimension >= 1");
    detail::require(static_cast<bool>(vnorm_), "cone norm function must be callable");
  }

  const Cone& cone() const { return cone_; }
  Index domain_dim() const { return domain_dim_; }

  Vector vnorm(const DomainVector& x) const {
    if (x.size() != domain_dim_)
      throw std::invalid_argument("conescal: cone norm argument has dimension " +
                                  std::to_string(x.size()) + ", space has dimension " +
                                  std::to_string(domain_dim_));
    Vector v = vnorm_(x);
    if (v.size() != cone_.dim())
      throw std::invalid_argument("conescal: cone norm returned dimension " +
                                  std::to_string(v.size()) + ", cone has dimension " +
                                  std::to_string(cone_.dim()));
    detail::check_finite(v, "cone norm value");
    return v;
  }

 private:
  Cone cone_;
  Index domain_dim_;
  VectorNormFn vnorm_;
};

// ||x||_e = xi_e(||x||_a): a scalar norm on X whenever the cone norm axioms
// hold. The scalarizer must share the space's cone.
template <class Scalar>
double induced_norm(const ConeNormedSpace<Scalar>& ns, const Scalarizer& scal,
                    const typename ConeNormedSpace<Scalar>::DomainVector& x) {
  detail::require(ns.cone() == scal.cone(),
                  "induced norm requires the space and the scalarizer to share one cone");
  return scal.xi(ns.vnorm(x));
}

// Verifies, on the sampled vectors and scalars, both the vector-level cone
// norm axioms (clauses acn1/acn2/acn3) and the scalar norm axioms of the
// induced norm (clauses positivity/homogeneity/triangle), plus norm-ball
// equality { ||x-y||_e < r } = { ||x-y||_a <<_a r*e } off the boundary band.
// Ball radii are taken from the positive scalar magnitudes (plus r = 1).
template <class Scalar>
CheckReport check_norm_axioms(const ConeNormedSpace<Scalar>& ns, const Scalarizer& scal,
                              std::span<const typename ConeNormedSpace<Scalar>::DomainVector> sample,
                              std::span<const Scalar> scalars) {
  using DomainVector = typename ConeNormedSpace<Scalar>::DomainVector;
  detail::require(ns.cone() == scal.cone(),
                  "norm axiom check requires the space and the scalarizer to share one cone");
  detail::require(!sample.empty(), "norm axiom check needs a non-empty sample");

  CheckReport report;
  const auto is_zero = [](const DomainVector& x) {
    return x.size() == 0 || x.template lpNorm<Eigen::Infinity>() == 0.0;
  };

  std::vector<Vector> vnorms(sample.size());
  std::vector<double> norms(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    vnorms[i] = ns.vnorm(sample[i]);
    norms[i] = scal.xi(vnorms[i]);
  }

  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (is_zero(sample[i])) {
      bool ok = is_zero_vector(vnorms[i]);
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"acn1_zero", {i}, {vnorms[i].lpNorm<Eigen::Infinity>()}});
      ok = std::abs(norms[i]) <= kCheckSlack;
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"positivity_zero", {i}, {norms[i]}});
    } else {
      bool ok = ns.cone().contains_interior(vnorms[i]);
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"acn1_positivity", {i}, {ns.cone().margin(vnorms[i])}});
      ok = norms[i] > 0.0;
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"positivity", {i}, {norms[i]}});
    }
  }

  // Homogeneity, vector level and induced level, over all (vector, scalar)
  // sample combinations.
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t s = 0; s < scalars.size(); ++s) {
      const double mag = std::abs(scalars[s]);
      const Vector scaled = ns.vnorm(scalars[s] * sample[i]);
      const Vector expect = mag * vnorms[i];
      const double tol = kCheckSlack * (1.0 + mag) * membership_scale(expect);
      bool ok = (scaled - expect).template lpNorm<Eigen::Infinity>() <= tol;
      report.record(ok);
      if (!ok)
        report.counterexamples.push_back(
            {"acn2_homogeneity", {i, s}, {(scaled - expect).template lpNorm<Eigen::Infinity>(), mag}});

      const double got = scal.xi(scaled);
      ok = std::abs(got - mag * norms[i]) <= kCheckSlack * (1.0 + mag) * (1.0 + std::abs(norms[i]));
      report.record(ok);
      if (!ok)
        report.counterexamples.push_back({"homogeneity", {i, s}, {got, mag * norms[i]}});
    }
  }

  // Subadditivity over all unordered vector pairs.
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      const Vector sum = ns.vnorm(sample[i] + sample[j]);
      bool ok = ns.cone().leq(sum, vnorms[i] + vnorms[j]);
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"acn3_triangle", {i, j}, {}});

      const double got = scal.xi(sum);
      ok = got <= norms[i] + norms[j] + kCheckSlack;
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"triangle", {i, j}, {got, norms[i] + norms[j]}});
    }
  }

  // Norm-ball equality on consecutive pairs for a bounded set of radii.
  std::vector<double> radii{1.0};
  for (const Scalar& s : scalars) {
    const double mag = std::abs(s);
    if (mag > 1e-6 && radii.size() < 9) radii.push_back(mag);
  }
  for (std::size_t i = 0; i + 1 < sample.size(); ++i) {
    const Vector diff = ns.vnorm(sample[i] - sample[i + 1]);
    const double de = scal.xi(diff);
    for (const double r : radii) {
      const bool metric_in = de < r;
      const bool cone_in = ns.cone().contains_interior(r * scal.direction() - diff);
      ++report.checked;
      if (metric_in == cone_in)
        ++report.passed;
      else if (std::abs(de - r) <= kBoundaryBand)
        ++report.band_excluded;
      else
        report.counterexamples.push_back({"norm_ball_equality", {i, i + 1}, {de, r}});
    }
  }

  return report;
}

}  // namespace conescal
