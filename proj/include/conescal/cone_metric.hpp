#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "conescal/check_report.hpp"
#include "conescal/cone.hpp"
#include "conescal/scalarizer.hpp"
#include "conescal/vector.hpp"

namespace conescal {

template <class Point>
concept EqualityComparablePoint = requires(const Point& a, const Point& b) {
  { a == b } -> std::convertible_to<bool>;
};

// Exact coordinate-wise equality for vector-valued points.
inline bool vectors_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// A point set X with a user-supplied vector-valued distance d_a into a
// cone-ordered R^n. Points are opaque; the library needs only the distance
// function and an equality predicate. Whether d_a actually satisfies the
// cone metric axioms is sample-checked, never assumed.
template <class Point>
class ConeMetricSpace {
 public:
  using DistanceFn = std::function<Vector(const Point&, const Point&)>;
  using EqualFn = std::function<bool(const Point&, const Point&)>;

  // dist_thread_safe declares that dist may be invoked concurrently; checks
  // only fan out to worker threads when it is set.
  ConeMetricSpace(Cone cone, DistanceFn dist, EqualFn equal, bool dist_thread_safe = false)
      : cone_(std::move(cone)),
        dist_(std::move(dist)),
        equal_(std::move(equal)),
        dist_thread_safe_(dist_thread_safe) {
    detail::require(static_cast<bool>(dist_), "distance function must be callable");
    detail::require(static_cast<bool>(equal_), "equality predicate must be callable");
  }

  ConeMetricSpace(Cone cone, DistanceFn dist, bool dist_thread_safe = false)
    requires EqualityComparablePoint<Point>
      : ConeMetricSpace(
            std::move(cone), std::move(dist),
            [](const Point& a, const Point& b) { return static_cast<bool>(a == b); },
            dist_thread_safe) {}

  const Cone& cone() const { return cone_; }
  bool dist_thread_safe() const { return dist_thread_safe_; }

  bool equal(const Point& x, const Point& y) const { return equal_(x, y); }

  Vector distance(const Point& x, const Point& y) const {
    Vector d = dist_(x, y);
    if (d.size() != cone_.dim())
      throw std::invalid_argument("conescal: cone distance returned dimension " +
                                  std::to_string(d.size()) + ", cone has dimension " +
                                  std::to_string(cone_.dim()));
    detail::check_finite(d, "cone distance value");
    return d;
  }

 private:
  Cone cone_;
  DistanceFn dist_;
  EqualFn equal_;
  bool dist_thread_safe_;
};

struct SequenceDiagnostics {
  bool cauchy_upto_tol = false;
  bool converges_upto_tol = false;
};

// The scalar metric d_e = xi_e o d_a induced by a cone metric space and a
// scalarizer over the same cone.
template <class Point>
class InducedMetric {
 public:
  InducedMetric(ConeMetricSpace<Point> space, Scalarizer scal)
      : space_(std::move(space)), scal_(std::move(scal)) {
    detail::require(space_.cone() == scal_.cone(),
                    "induced metric requires the space and the scalarizer to share one cone");
  }

  const ConeMetricSpace<Point>& space() const { return space_; }
  const Scalarizer& scalarizer() const { return scal_; }

  double distance(const Point& x, const Point& y) const {
    return scal_.xi(space_.distance(x, y));
  }

  // y in B_a(center, c) = { y : d_a(center, y) <<_a c }. c must be interior.
  bool in_cone_ball(const Point& center, const Vector& c, const Point& y) const {
    detail::require(space_.cone().contains_interior(c),
                    "cone ball radius c must lie in the algebraic interior");
    return space_.cone().lt_strict(space_.distance(center, y), c);
  }

  // y in B_{d_e}(center, r) = { y : d_e(center, y) < r }. r must be positive.
  bool in_metric_ball(const Point& center, double r, const Point& y) const {
    detail::require(r > 0.0, "metric ball radius must be positive");
    return distance(center, y) < r;
  }

  // Checks nonnegativity, identity of indiscernibles and symmetry on all
  // pairs, and the triangle inequality on all triples (a seeded random
  // subset of kTripleCap once enumeration would exceed it), with slack
  // kCheckSlack. Counterexample indices refer to the sample.
  CheckReport check_metric_axioms(std::span<const Point> sample, std::uint64_t rng_seed) const {
    detail::require(sample.size() >= 3, "metric axiom check needs a sample of size >= 3");
    const std::size_t n = sample.size();
    const Matrix d = distance_matrix(sample);
    CheckReport report;

    for (std::size_t i = 0; i < n; ++i) {
      const bool ok = std::abs(d(i, i)) <= kCheckSlack;
      report.record(ok);
      if (!ok) report.counterexamples.push_back({"identity_self", {i}, {d(i, i)}});
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = d(i, j);
        bool ok = dij >= -kCheckSlack;
        report.record(ok);
        if (!ok) report.counterexamples.push_back({"nonnegativity", {i, j}, {dij}});

        const bool same = space_.equal(sample[i], sample[j]);
        ok = same ? dij <= kCheckSlack : dij > 0.0;
        report.record(ok);
        if (!ok) report.counterexamples.push_back({"identity", {i, j}, {dij}});

        ok = std::abs(dij - d(j, i)) <= kCheckSlack;
        report.record(ok);
        if (!ok) report.counterexamples.push_back({"symmetry", {i, j}, {dij, d(j, i)}});
      }
    }

    const auto triangle = [&](std::size_t i, std::size_t j, std::size_t k) {
      const bool ok = d(i, j) <= d(i, k) + d(k, j) + kCheckSlack;
      report.record(ok);
      if (!ok)
        report.counterexamples.push_back({"triangle", {i, j, k}, {d(i, j), d(i, k), d(k, j)}});
    };

    const std::size_t total_triples = n * (n - 1) * (n - 2);
    if (total_triples <= kTripleCap) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (i != j && j != k && i != k) triangle(i, j, k);
    } else {
      std::mt19937_64 rng(rng_seed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      std::size_t drawn = 0;
      while (drawn < kTripleCap) {
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        if (i == j || j == k || i == k) continue;
        triangle(i, j, k);
        ++drawn;
      }
    }
    return report;
  }

  // Compares metric-ball and cone-ball membership with c = r*e on every
  // sample point. Points whose induced distance lies within kBoundaryBand of
  // r and whose classifications disagree are numerically ambiguous; they are
  // counted in band_excluded rather than reported as counterexamples. Any
  // off-band disagreement is a counterexample. Equality with a general
  // interior c that is not a multiple of e is not claimed; compare against
  // in_cone_ball directly for that.
  CheckReport check_ball_equality(const Point& center, double r,
                                  std::span<const Point> sample) const {
    detail::require(r > 0.0, "ball equality check requires r > 0");
    CheckReport report;
    const Vector c = r * scal_.direction();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const Vector da = space_.distance(center, sample[i]);
      const double de = scal_.xi(da);
      const bool metric_in = de < r;
      const bool cone_in = space_.cone().contains_interior(c - da);
      ++report.checked;
      if (metric_in == cone_in) {
        ++report.passed;
      } else if (std::abs(de - r) <= kBoundaryBand) {
        ++report.band_excluded;
      } else {
        report.counterexamples.push_back(
            {"ball_equality", {i}, {de, r, static_cast<double>(metric_in)}});
      }
    }
    return report;
  }

  // Finite-prefix proxies for the limit statements. The sequence is Cauchy
  // up to tol when some tail holding at least two elements has diameter
  // <= tol in the induced metric. It converges up to tol when the induced
  // distances to the limit enter [0, tol] and stay there; when no limit is
  // supplied the final element stands in for it (and is excluded from the
  // tail test).
  SequenceDiagnostics sequence_diagnostics(std::span<const Point> seq,
                                           const std::optional<Point>& limit, double tol) const {
    detail::require(!seq.empty(), "sequence diagnostics need a non-empty sequence");
    detail::require(tol > 0.0, "sequence diagnostics tolerance must be positive");
    const std::size_t n = seq.size();
    SequenceDiagnostics out;

    if (n == 1) {
      out.cauchy_upto_tol = true;
      out.converges_upto_tol = true;
      return out;
    }

    // Smallest N whose tail {x_N, ..., x_{n-1}} has diameter <= tol.
    std::vector<double> suffix_diameter(n, 0.0);
    for (std::size_t start = n - 1; start-- > 0;) {
      double diam = suffix_diameter[start + 1];
      for (std::size_t j = start + 1; j < n; ++j)
        diam = std::max(diam, distance(seq[start], seq[j]));
      suffix_diameter[start] = diam;
    }
    out.cauchy_upto_tol = false;
    for (std::size_t start = 0; start + 2 <= n; ++start) {
      if (suffix_diameter[start] <= tol) {
        out.cauchy_upto_tol = true;
        break;
      }
    }

    const Point& target = limit ? *limit : seq[n - 1];
    const std::size_t last = limit ? n : n - 1;
    std::vector<double> to_limit(last);
    for (std::size_t i = 0; i < last; ++i) to_limit[i] = distance(seq[i], target);
    std::size_t first_inside = last;
    for (std::size_t i = 0; i < last; ++i) {
      if (to_limit[i] <= tol) {
        first_inside = i;
        break;
      }
    }
    bool stays = first_inside < last;
    for (std::size_t i = first_inside; i < last && stays; ++i) stays = to_limit[i] <= tol;
    out.converges_upto_tol = stays;
    return out;
  }

 private:
  // Full pairwise induced-distance matrix; both orientations are computed
  // because symmetry itself is under test. Rows fan out to worker threads
  // only when the space declares its distance callable thread-safe.
  Matrix distance_matrix(std::span<const Point> sample) const {
    const std::size_t n = sample.size();
    Matrix d(n, n);
    const auto fill_rows = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < n; ++j) d(i, j) = distance(sample[i], sample[j]);
    };
    const unsigned hw = std::thread::hardware_concurrency();
    if (!space_.dist_thread_safe() || hw < 2 || n < 64) {
      fill_rows(0, n);
      return d;
    }
    const std::size_t workers = std::min<std::size_t>(hw, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill_rows, begin, end);
    }
    for (auto& t : pool) t.join();
    return d;
  }

  ConeMetricSpace<Point> space_;
  Scalarizer scal_;
};

}  // namespace conescal
