#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

/// One piece of a factored density.  On [lo, hi] the density equals
/// sigma^alpha * (q0 + q1 sigma + q2 sigma^2) with sigma = t - a, where the
/// polynomial already carries any constant coefficient.
struct DensityPiece {
  double lo = 0.0, hi = 0.0;
  double alpha = 0.0;
  double q0 = 0.0, q1 = 0.0, q2 = 0.0;
  bool zero = false;
};

/// A nonnegative density on a closed interval with exact cumulative masses.
/// Supported kinds — constant, power law (t - a)^alpha anchored at the left
/// endpoint, piecewise-linear tables, and products of two of those — all
/// reduce to sigma^alpha times a piecewise quadratic, so masses and first
/// moments have closed forms.  Immutable after construction.
class WeightedMeasure1D {
 public:
  static WeightedMeasure1D constant(double a, double b, double c,
                                    std::optional<double> total_mass_hint = {});
  static WeightedMeasure1D power_law(double a, double b, double alpha,
                                     std::optional<double> total_mass_hint = {});
  static WeightedMeasure1D tabulated(double a, double b, Eigen::VectorXd knots,
                                     Eigen::VectorXd values,
                                     std::optional<double> total_mass_hint = {});
  static WeightedMeasure1D product(const WeightedMeasure1D& lhs, const WeightedMeasure1D& rhs,
                                   std::optional<double> total_mass_hint = {});

  double a() const { return a_; }
  double b() const { return b_; }
  double total_mass() const { return total_mass_; }
  double alpha() const { return alpha_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }

  /// Pointwise density; +inf at the anchor when alpha < 0.
  double density(double t) const;

  /// m[a, x].  Throws OutOfIntervalError for x outside [a, b].
  double cumulative(double x) const;
  /// m[x, b], accumulated from the right for accuracy near b.
  double tail_mass(double x) const;

  /// Exact integral of the linear function with values (fu, fv) at (u, v)
  /// against the density over [u, v] within [a, b].
  double integrate_linear(double u, double v, double fu, double fv) const;

  bool same_interval(const WeightedMeasure1D& other, double tol = 1e-9) const;

 private:
  WeightedMeasure1D() = default;
  void build_pieces(const std::vector<double>& breaks,
                    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& tabs);
  void finalize(std::optional<double> hint);
  std::size_t piece_index(double t) const;
  double piece_partial_mass(const DensityPiece& p, double u, double v) const;

  double a_ = 0.0, b_ = 1.0;
  double coeff_ = 1.0;
  double alpha_ = 0.0;
  std::vector<DensityPiece> pieces_;
  std::vector<double> prefix_mass_;  // mass of pieces before index i
  std::vector<double> suffix_mass_;  // mass of pieces from index i on
  double total_mass_ = 0.0;
  friend class ProductMeasureFriend;
};

struct ProductMeasure {
  WeightedMeasure1D first;
  WeightedMeasure1D second;
  double mass() const { return first.total_mass() * second.total_mass(); }
};

enum class TailSide { Left, Right };

/// The singular moment integral on one side of x:
///   Left : int_a^x  nu[a,t]^{p'} w(t)^{1-p'} dt
///   Right: int_x^b  nu[t,b]^{p'} w(t)^{1-p'} dt
/// with p' = p/(p-1).  Returns +inf when the refinement ladder detects
/// divergence (w may vanish, and 1 - p' < 0).
double tail_moment(const WeightedMeasure1D& nu, const WeightedMeasure1D& w, double p,
                   TailSide side, double x);

}  // namespace orlicz
