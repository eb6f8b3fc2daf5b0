#pragma once

#include <Eigen/Core>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

enum class YoungKind { Power, ExpPower, TabulatedConvex };

/// Outcome of a sampled structural predicate (submultiplicativity or
/// convexity of a composition).  `worst` is the largest observed ratio or
/// relative midpoint excess; (s, t) locate it.
struct PredicateReport {
  bool holds = true;
  double worst = 0.0;
  double s = 0.0;
  double t = 0.0;
};

/// An even convex function with Phi(0) = 0 that grows to infinity, known in
/// closed form (|t|^q, e^{|t|^q} - 1) or as the even extension of a convex
/// piecewise-linear table.  Immutable after construction; all evaluation is
/// reentrant.
class YoungFunction {
 public:
  static YoungFunction power(double q);
  static YoungFunction exp_power(double q);
  /// Knots t0 = 0 < t1 < ... with ordinates phi0 = 0 <= phi1 <= ...; the
  /// interpolant is extended past the last knot by its final linear piece.
  static YoungFunction tabulated(Eigen::VectorXd knots, Eigen::VectorXd ordinates);

  YoungKind kind() const { return kind_; }
  double q() const { return q_; }
  double domain_cap() const { return domain_cap_; }
  bool invertible() const { return invertible_; }

  /// Phi(|t|).  Throws OverflowDomainError for |t| > domain_cap().
  double operator()(double t) const;

  /// The t >= 0 with Phi(t) = y, by expanding bracket plus bisection.
  double inverse(double y) const;

  /// 2 / Phi^{-1}(1/2).
  double c0() const;

  /// Checks Phi(s t) <= Phi(s) Phi(t) (1 + eps) over axis x axis.
  PredicateReport check_submultiplicative(const std::vector<double>& axis) const;

  /// Midpoint-convexity of u -> Phi(u^{1/p}) over pairs from `grid`.
  PredicateReport check_gamma_convex(double p, const std::vector<double>& grid) const;

  /// Default sample axis for the predicate checks: 0 plus a geometric and
  /// linear fill of (0, min(4, sqrt(domain_cap))].
  std::vector<double> default_predicate_axis() const;

  static constexpr double eps_convex = 1e-9;
  static constexpr double eps_inv = 1e-10;

 private:
  YoungFunction() = default;
  double eval_abs(double t) const;  // t >= 0, no domain check
  void certify_monotone();

  YoungKind kind_ = YoungKind::Power;
  double q_ = 2.0;
  Eigen::VectorXd knots_;
  Eigen::VectorXd ordinates_;
  double last_slope_ = 0.0;
  double domain_cap_ = 0.0;
  bool invertible_ = false;
};

}  // namespace orlicz
