#include "orlicz/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "orlicz/quadrature.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// v^c - u^c for 0 <= u <= v, avoiding cancellation when the gap is narrow.
double pow_diff(double c, double u, double v) {
  if (u <= 0.0) return std::pow(v, c);
  const double gap = (v - u) / u;
  if (gap < 0.5) return std::pow(u, c) * std::expm1(c * std::log1p(gap));
  return std::pow(v, c) - std::pow(u, c);
}

// int_{s0}^{s1} sigma^alpha * sum_k poly[k] sigma^k dsigma, s0 >= 0.
double power_poly_integral(double alpha, const double* poly, int n, double s0, double s1) {
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    if (poly[k] == 0.0) continue;
    const double c = alpha + k + 1.0;
    total += poly[k] * pow_diff(c, s0, s1) / c;
  }
  return total;
}

}  // namespace

WeightedMeasure1D WeightedMeasure1D::constant(double a, double b, double c,
                                              std::optional<double> hint) {
  if (!(b > a)) throw std::invalid_argument("WeightedMeasure1D: need a < b");
  if (!(c >= 0.0)) throw std::invalid_argument("WeightedMeasure1D: density must be >= 0");
  WeightedMeasure1D m;
  m.a_ = a;
  m.b_ = b;
  m.coeff_ = c;
  m.alpha_ = 0.0;
  m.build_pieces({a, b}, {});
  m.finalize(hint);
  return m;
}

WeightedMeasure1D WeightedMeasure1D::power_law(double a, double b, double alpha,
                                               std::optional<double> hint) {
  if (!(b > a)) throw std::invalid_argument("WeightedMeasure1D: need a < b");
  if (!(alpha > -1.0)) throw std::invalid_argument("WeightedMeasure1D: power law needs alpha > -1");
  WeightedMeasure1D m;
  m.a_ = a;
  m.b_ = b;
  m.coeff_ = 1.0;
  m.alpha_ = alpha;
  m.build_pieces({a, b}, {});
  m.finalize(hint);
  return m;
}

WeightedMeasure1D WeightedMeasure1D::tabulated(double a, double b, Eigen::VectorXd knots,
                                               Eigen::VectorXd values,
                                               std::optional<double> hint) {
  if (!(b > a)) throw std::invalid_argument("WeightedMeasure1D: need a < b");
  if (knots.size() != values.size() || knots.size() < 2)
    throw std::invalid_argument("WeightedMeasure1D: tabulated needs matching knots/values, size >= 2");
  const double snap = 1e-9 * std::max({1.0, std::abs(a), std::abs(b), b - a});
  if (std::abs(knots[0] - a) > snap || std::abs(knots[knots.size() - 1] - b) > snap)
    throw std::invalid_argument("WeightedMeasure1D: tabulated knots must span the interval");
  knots[0] = a;
  knots[knots.size() - 1] = b;
  for (Eigen::Index i = 0; i < knots.size(); ++i) {
    if (i > 0 && !(knots[i] > knots[i - 1]))
      throw std::invalid_argument("WeightedMeasure1D: knots must be strictly increasing");
    if (!(values[i] >= 0.0))
      throw std::invalid_argument("WeightedMeasure1D: density values must be >= 0");
  }
  WeightedMeasure1D m;
  m.a_ = a;
  m.b_ = b;
  m.coeff_ = 1.0;
  m.alpha_ = 0.0;
  std::vector<double> breaks(knots.data(), knots.data() + knots.size());
  m.build_pieces(breaks, {{std::move(knots), std::move(values)}});
  m.finalize(hint);
  return m;
}

WeightedMeasure1D WeightedMeasure1D::product(const WeightedMeasure1D& lhs,
                                             const WeightedMeasure1D& rhs,
                                             std::optional<double> hint) {
  if (!lhs.same_interval(rhs))
    throw IncompatibleIntervalsError("WeightedMeasure1D::product: factors must share the interval");
  WeightedMeasure1D m;
  m.a_ = lhs.a_;
  m.b_ = lhs.b_;
  m.coeff_ = lhs.coeff_ * rhs.coeff_;
  m.alpha_ = lhs.alpha_ + rhs.alpha_;
  if (!(m.alpha_ > -1.0))
    throw std::invalid_argument("WeightedMeasure1D::product: combined exponent must stay > -1");

  // Each factor contributes at most one linear table; pieces of the product
  // are quadratics between the merged knot sets.
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> tabs;
  std::set<double> breakset{m.a_, m.b_};
  for (const WeightedMeasure1D* src : {&lhs, &rhs}) {
    for (const auto& p : src->pieces_) breakset.insert(p.lo);
    if (src->has_table_) {
      tabs.emplace_back(src->tab_knots_, src->tab_values_);
    }
  }
  if (tabs.size() > 2)
    throw std::invalid_argument("WeightedMeasure1D::product: at most two tabulated factors");
  std::vector<double> breaks(breakset.begin(), breakset.end());
  m.build_pieces(breaks, tabs);
  m.finalize(hint);
  return m;
}

void WeightedMeasure1D::build_pieces(
    const std::vector<double>& breaks,
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& tabs) {
  if (!tabs.empty()) {
    has_table_ = true;
    tab_knots_ = tabs[0].first;
    tab_values_ = tabs[0].second;
  }
  pieces_.clear();
  auto linear_on = [](const Eigen::VectorXd& kn, const Eigen::VectorXd& va, double lo,
                      double a) -> std::pair<double, double> {
    // Returns (value, slope) of the table piece containing lo, in sigma coords.
    const double* begin = kn.data();
    const double* it = std::upper_bound(begin, begin + kn.size(), lo);
    Eigen::Index j = std::max<Eigen::Index>(1, it - begin) - 1;
    if (j >= kn.size() - 1) j = kn.size() - 2;
    const double slope = (va[j + 1] - va[j]) / (kn[j + 1] - kn[j]);
    const double at_lo = va[j] + slope * (lo - kn[j]);
    return {at_lo - slope * (lo - a) + slope * 0.0, slope};  // value at sigma = lo - a handled below
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    DensityPiece p;
    p.lo = breaks[i];
    p.hi = breaks[i + 1];
    p.alpha = alpha_;
    // Polynomial in sigma = t - a: product of the linear table factors.
    double c0 = coeff_, c1 = 0.0, c2 = 0.0;
    for (const auto& [kn, va] : tabs) {
      auto [v_lo, slope] = linear_on(kn, va, p.lo, a_);
      // Table value at t equals v_lo + slope*(t - lo); rewrite in sigma.
      const double A = v_lo - slope * (p.lo - a_);
      const double B = slope;
      const double n0 = c0 * A;
      const double n1 = c0 * B + c1 * A;
      const double n2 = c1 * B + c2 * A;
      // c2*B would be cubic; with at most two linear factors it stays zero.
      c0 = n0;
      c1 = n1;
      c2 = n2;
    }
    p.q0 = c0;
    p.q1 = c1;
    p.q2 = c2;
    p.zero = (c0 == 0.0 && c1 == 0.0 && c2 == 0.0);
    // A linear factor vanishing at both piece ends is zero throughout.
    if (!p.zero && !tabs.empty()) {
      const double s0 = p.lo - a_, s1 = p.hi - a_;
      const double mid = 0.5 * (s0 + s1);
      const double vmid = c0 + mid * (c1 + mid * c2);
      const double v0 = c0 + s0 * (c1 + s0 * c2);
      const double v1 = c0 + s1 * (c1 + s1 * c2);
      if (v0 == 0.0 && v1 == 0.0 && vmid == 0.0) p.zero = true;
    }
    pieces_.push_back(p);
  }
}

void WeightedMeasure1D::finalize(std::optional<double> hint) {
  prefix_mass_.assign(pieces_.size() + 1, 0.0);
  suffix_mass_.assign(pieces_.size() + 1, 0.0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    const double poly[3] = {p.q0, p.q1, p.q2};
    const double mass = p.zero ? 0.0 : power_poly_integral(p.alpha, poly, 3, p.lo - a_, p.hi - a_);
    if (!(mass >= -1e-12 * std::max(1.0, std::abs(mass))) || !std::isfinite(mass))
      throw std::invalid_argument("WeightedMeasure1D: piece mass must be finite and >= 0");
    prefix_mass_[i + 1] = prefix_mass_[i] + std::max(0.0, mass);
  }
  for (std::size_t i = pieces_.size(); i-- > 0;) {
    suffix_mass_[i] = suffix_mass_[i + 1] + (prefix_mass_[i + 1] - prefix_mass_[i]);
  }
  total_mass_ = prefix_mass_.back();
  if (hint && std::abs(*hint - total_mass_) > 1e-8 * std::max(1.0, std::abs(*hint)))
    throw std::invalid_argument("WeightedMeasure1D: total_mass_hint disagrees with computed mass");
}

std::size_t WeightedMeasure1D::piece_index(double t) const {
  std::size_t lo = 0, hi = pieces_.size();
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (t >= pieces_[mid].lo)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double WeightedMeasure1D::density(double t) const {
  if (t < a_ - 1e-12 || t > b_ + 1e-12)
    throw OutOfIntervalError("WeightedMeasure1D::density: t outside [a, b]");
  t = std::clamp(t, a_, b_);
  const auto& p = pieces_[piece_index(t)];
  if (p.zero) return 0.0;
  const double s = t - a_;
  const double poly = p.q0 + s * (p.q1 + s * p.q2);
  if (p.alpha == 0.0) return poly;
  if (s == 0.0) return p.alpha > 0.0 ? 0.0 : (poly > 0.0 ? kInf : 0.0);
  return std::pow(s, p.alpha) * poly;
}

double WeightedMeasure1D::piece_partial_mass(const DensityPiece& p, double u, double v) const {
  if (p.zero || !(v > u)) return 0.0;
  const double poly[3] = {p.q0, p.q1, p.q2};
  return power_poly_integral(p.alpha, poly, 3, u - a_, v - a_);
}

double WeightedMeasure1D::cumulative(double x) const {
  if (x < a_ - 1e-12 || x > b_ + 1e-12)
    throw OutOfIntervalError("WeightedMeasure1D::cumulative: x outside [a, b]");
  x = std::clamp(x, a_, b_);
  const std::size_t j = piece_index(x);
  return prefix_mass_[j] + piece_partial_mass(pieces_[j], pieces_[j].lo, x);
}

double WeightedMeasure1D::tail_mass(double x) const {
  if (x < a_ - 1e-12 || x > b_ + 1e-12)
    throw OutOfIntervalError("WeightedMeasure1D::tail_mass: x outside [a, b]");
  x = std::clamp(x, a_, b_);
  const std::size_t j = piece_index(x);
  return suffix_mass_[j + 1] + piece_partial_mass(pieces_[j], x, pieces_[j].hi);
}

double WeightedMeasure1D::integrate_linear(double u, double v, double fu, double fv) const {
  if (u < a_ - 1e-12 || v > b_ + 1e-12 || !(v >= u))
    throw OutOfIntervalError("WeightedMeasure1D::integrate_linear: bad subinterval");
  u = std::clamp(u, a_, b_);
  v = std::clamp(v, a_, b_);
  if (u == v) return 0.0;
  const double slope = (fv - fu) / (v - u);
  // f(t) = A + B sigma with sigma = t - a.
  const double B = slope;
  const double A = fu - slope * (u - a_);
  double total = 0.0;
  for (std::size_t j = piece_index(u); j < pieces_.size() && pieces_[j].lo < v; ++j) {
    const auto& p = pieces_[j];
    if (p.zero) continue;
    const double lo = std::max(u, p.lo), hi = std::min(v, p.hi);
    if (!(hi > lo)) continue;
    const double poly[4] = {A * p.q0, A * p.q1 + B * p.q0, A * p.q2 + B * p.q1, B * p.q2};
    total += power_poly_integral(p.alpha, poly, 4, lo - a_, hi - a_);
  }
  return total;
}

bool WeightedMeasure1D::same_interval(const WeightedMeasure1D& other, double tol) const {
  const double scale = std::max({1.0, std::abs(a_), std::abs(b_)});
  return std::abs(a_ - other.a_) <= tol * scale && std::abs(b_ - other.b_) <= tol * scale;
}

double tail_moment(const WeightedMeasure1D& nu, const WeightedMeasure1D& w, double p,
                   TailSide side, double x) {
  if (!nu.same_interval(w))
    throw IncompatibleIntervalsError("tail_moment: nu and w must share the interval");
  if (!(p > 1.0)) throw std::invalid_argument("tail_moment: p must be > 1");
  const double a = nu.a(), b = nu.b();
  if (!(x > a) || !(x < b)) throw OutOfIntervalError("tail_moment: x must be interior");
  const double pp = p / (p - 1.0);

  const double lo = (side == TailSide::Left) ? a : x;
  const double hi = (side == TailSide::Left) ? x : b;

  auto nu_weight = [&](double t) {
    return (side == TailSide::Left) ? nu.cumulative(t) : nu.tail_mass(t);
  };
  auto integrand = [&](double t) {
    const double nc = nu_weight(t);
    if (nc <= 0.0) return 0.0;
    const double wd = w.density(t);
    if (wd == 0.0) return kInf;
    if (std::isinf(wd)) return 0.0;  // 1 - p' < 0
    return std::exp(pp * std::log(nc) + (1.0 - pp) * std::log(wd));
  };

  // Split at every density breakpoint so zeros of w sit on panel boundaries.
  std::set<double> cuts{lo, hi};
  for (const auto* m : {&nu, &w})
    for (const auto& piece : m->pieces())
      if (piece.lo > lo && piece.lo < hi) cuts.insert(piece.lo);
  std::vector<double> pts(cuts.begin(), cuts.end());

  KahanSum total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u = pts[i], v = pts[i + 1];
    // A piece where w vanishes identically contributes 0 or diverges.
    const double mid = 0.5 * (u + v);
    if (w.density(mid) == 0.0) {
      const double nu_top = std::max(nu_weight(u), nu_weight(v));
      if (nu_top > 0.0) return kInf;
      continue;
    }
    const bool sing_left = (w.density(u) == 0.0);
    const bool sing_right = (w.density(v) == 0.0);
    const auto res = integrate_graded(integrand, u, v, sing_left, sing_right);
    if (res.divergent) return kInf;
    total.add(res.value);
  }
  return total.value();
}

}  // namespace orlicz
