#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

namespace {
constexpr double kOverflowBudget = std::numeric_limits<double>::max() / 2.0;
}

YoungFunction YoungFunction::power(double q) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::invalid_argument("YoungFunction::power: q must be >= 1");
  YoungFunction phi;
  phi.kind_ = YoungKind::Power;
  phi.q_ = q;
  phi.domain_cap_ = std::exp(std::log(kOverflowBudget) / q);
  phi.certify_monotone();
  return phi;
}

YoungFunction YoungFunction::exp_power(double q) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::invalid_argument("YoungFunction::exp_power: q must be >= 1");
  YoungFunction phi;
  phi.kind_ = YoungKind::ExpPower;
  phi.q_ = q;
  phi.domain_cap_ = std::exp(std::log(std::log(kOverflowBudget)) / q);
  phi.certify_monotone();
  return phi;
}

YoungFunction YoungFunction::tabulated(Eigen::VectorXd knots, Eigen::VectorXd ordinates) {
  if (knots.size() != ordinates.size() || knots.size() < 2)
    throw std::invalid_argument("YoungFunction::tabulated: need matching knots/ordinates, size >= 2");
  if (knots[0] != 0.0 || ordinates[0] != 0.0)
    throw std::invalid_argument("YoungFunction::tabulated: first knot must be (0, 0)");
  const Eigen::Index m = knots.size();
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < m; ++i) {
    if (!(knots[i] > knots[i - 1]))
      throw std::invalid_argument("YoungFunction::tabulated: knots must be strictly increasing");
    if (!(ordinates[i] >= ordinates[i - 1]))
      throw std::invalid_argument("YoungFunction::tabulated: ordinates must be nondecreasing");
    const double slope = (ordinates[i] - ordinates[i - 1]) / (knots[i] - knots[i - 1]);
    // Convexity of the interpolant is equivalent to nondecreasing slopes.
    const double scale = std::max(1.0, std::abs(prev_slope));
    if (slope < prev_slope - eps_convex * scale)
      throw std::invalid_argument("YoungFunction::tabulated: slopes must be nondecreasing (convexity)");
    prev_slope = std::max(prev_slope, slope);
  }
  if (!(prev_slope > 0.0))
    throw std::invalid_argument("YoungFunction::tabulated: last slope must be positive (Phi must be unbounded)");

  YoungFunction phi;
  phi.kind_ = YoungKind::TabulatedConvex;
  phi.knots_ = std::move(knots);
  phi.ordinates_ = std::move(ordinates);
  phi.last_slope_ = prev_slope;
  const double tm = phi.knots_[m - 1], om = phi.ordinates_[m - 1];
  phi.domain_cap_ = tm + (kOverflowBudget - om) / prev_slope;
  phi.certify_monotone();
  return phi;
}

double YoungFunction::eval_abs(double t) const {
  switch (kind_) {
    case YoungKind::Power:
      return std::pow(t, q_);
    case YoungKind::ExpPower:
      return std::expm1(std::pow(t, q_));
    case YoungKind::TabulatedConvex: {
      const Eigen::Index m = knots_.size();
      if (t >= knots_[m - 1])
        return ordinates_[m - 1] + last_slope_ * (t - knots_[m - 1]);
      const double* begin = knots_.data();
      const double* it = std::upper_bound(begin, begin + m, t);
      const Eigen::Index j = std::max<Eigen::Index>(1, it - begin) - 1;
      const double w = (t - knots_[j]) / (knots_[j + 1] - knots_[j]);
      return ordinates_[j] + w * (ordinates_[j + 1] - ordinates_[j]);
    }
  }
  return 0.0;
}

double YoungFunction::operator()(double t) const {
  const double a = std::abs(t);
  if (a > domain_cap_)
    throw OverflowDomainError("YoungFunction: |t| exceeds domain_cap");
  if (a == 0.0) return 0.0;
  return eval_abs(a);
}

void YoungFunction::certify_monotone() {
  // Strict-increase sampling on a geometric grid spanning the whole domain.
  const int n = 240;
  const double lo = domain_cap_ * 0x1p-60;
  const double ratio = std::exp(std::log(domain_cap_ / lo) / (n - 1));
  double t = lo;
  double prev = eval_abs(t);
  bool strict = true;
  for (int i = 1; i < n && strict; ++i) {
    t = (i == n - 1) ? domain_cap_ : t * ratio;
    const double v = eval_abs(t);
    if (!(v > prev)) strict = false;
    prev = v;
  }
  // A Young function must be observably unbounded on its domain.
  if (!(eval_abs(domain_cap_) > 1.0)) strict = false;
  invertible_ = strict;
}

double YoungFunction::inverse(double y) const {
  if (!invertible_)
    throw NotInvertibleError("YoungFunction::inverse: monotonicity certification failed");
  if (!(y >= 0.0))
    throw std::invalid_argument("YoungFunction::inverse: y must be >= 0");
  if (y == 0.0) return 0.0;
  const double ycap = eval_abs(domain_cap_);
  if (y > ycap)
    throw OverflowDomainError("YoungFunction::inverse: y exceeds Phi(domain_cap)");

  double hi = std::min(1.0, domain_cap_);
  double lo = 0.0;
  while (eval_abs(hi) < y) {
    lo = hi;
    hi = std::min(hi * 2.0, domain_cap_);
    if (hi == domain_cap_) break;
  }
  const double ytol = eps_inv * std::max(1.0, y) * 1e-2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double v = eval_abs(mid);
    if (std::abs(v - y) <= ytol) return mid;
    if (v < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double YoungFunction::c0() const { return 2.0 / inverse(0.5); }

PredicateReport YoungFunction::check_submultiplicative(const std::vector<double>& axis) const {
  PredicateReport rep;
  rep.worst = -std::numeric_limits<double>::infinity();
  for (double s : axis) {
    for (double t : axis) {
      if (s * t > domain_cap_)
        throw OverflowDomainError("check_submultiplicative: s*t exceeds domain_cap");
      const double denom = (*this)(s) * (*this)(t);
      if (denom <= 0.0) continue;
      const double ratio = (*this)(s * t) / denom;
      if (ratio > rep.worst) {
        rep.worst = ratio;
        rep.s = s;
        rep.t = t;
      }
    }
  }
  if (!std::isfinite(rep.worst)) rep.worst = 1.0;  // degenerate axis
  rep.holds = rep.worst <= 1.0 + eps_convex;
  return rep;
}

PredicateReport YoungFunction::check_gamma_convex(double p, const std::vector<double>& grid) const {
  if (!(p >= 1.0)) throw std::invalid_argument("check_gamma_convex: p must be >= 1");
  PredicateReport rep;
  rep.worst = -std::numeric_limits<double>::infinity();
  auto gamma = [this, p](double u) { return (*this)(std::pow(u, 1.0 / p)); };
  for (double u : grid) {
    for (double v : grid) {
      if (v <= u) continue;
      const double avg = 0.5 * (gamma(u) + gamma(v));
      const double mid = gamma(0.5 * (u + v));
      const double excess = (mid - avg) / std::max(1.0, avg);
      if (excess > rep.worst) {
        rep.worst = excess;
        rep.s = u;
        rep.t = v;
      }
    }
  }
  if (!std::isfinite(rep.worst)) rep.worst = 0.0;
  rep.holds = rep.worst <= eps_convex;
  return rep;
}

std::vector<double> YoungFunction::default_predicate_axis() const {
  const double top = std::min(4.0, std::sqrt(domain_cap_));
  std::vector<double> axis;
  axis.push_back(0.0);
  for (double g = 1e-3; g < 0.12; g *= 2.0) axis.push_back(g * top);
  for (int i = 1; i <= 32; ++i) axis.push_back(top * i / 32.0);
  return axis;
}

}  // namespace orlicz
