#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace orlicz {

/// Neumaier-compensated accumulator; results are independent of how panel
/// work is scheduled as long as terms arrive in a fixed order.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 48;
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline std::pair<double, double> gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kGK15Nodes[i];
    const double fv = f(c - x) + f(c + x);
    resk += kGK15WeightsK[i] * fv;
    if (i % 2 == 1) resg += kGK15WeightsG[i / 2] * fv;
  }
  const double fc = f(c);
  resk += kGK15WeightsK[7] * fc;
  resg += kGK15WeightsG[3] * fc;
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

template <class F>
inline double adaptive_rec(F&& f, double a, double b, double value, double err,
                           double tol, int depth, int max_depth) {
  if (err <= tol || depth >= max_depth || !(b - a > 0.0)) return value;
  const double m = 0.5 * (a + b);
  const auto [vl, el] = gk15(f, a, m);
  const auto [vr, er] = gk15(f, m, b);
  return adaptive_rec(f, a, m, vl, el, 0.5 * tol, depth + 1, max_depth) +
         adaptive_rec(f, m, b, vr, er, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Gauss–Kronrod integration of f over [a, b].
template <class F>
inline double adaptive_gk15(F&& f, double a, double b, const QuadOptions& opts = {}) {
  if (!(b > a)) return 0.0;
  const auto [v, e] = detail::gk15(f, a, b);
  const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(v));
  return detail::adaptive_rec(f, a, b, v, e, tol, 0, opts.max_depth);
}

struct LadderOptions {
  double shrink = 0.25;      // geometric panel ratio toward the singular end
  int max_levels = 100;
  double div_factor = 10.0;  // total growth over three levels that declares divergence
  double nondecay = 0.995;   // panel-increment ratio treated as non-decaying
  double inf_cap = 1e12;
  int min_levels = 6;        // levels before divergence heuristics engage
};

struct LadderResult {
  double value = 0.0;
  bool divergent = false;
  int levels = 0;
};

namespace detail {

// Integrates f over (a, b] where f may blow up as x -> a+.  Panels shrink
// geometrically toward a; the running total and per-panel increments drive
// the convergence/divergence decision.
template <class F>
inline LadderResult ladder_left(F&& f, double a, double b, const QuadOptions& q,
                                const LadderOptions& L) {
  LadderResult res;
  const double h = b - a;
  KahanSum total;
  double hi = b;
  double prev_inc = std::numeric_limits<double>::quiet_NaN();
  int nondecay_streak = 0;
  double totals[3] = {0.0, 0.0, 0.0};  // ring buffer of totals three levels back
  for (int k = 0; k < L.max_levels; ++k) {
    const double lo = a + h * std::pow(L.shrink, k + 1);
    if (!(lo < hi)) break;
    const double inc = adaptive_gk15(f, lo, hi, q);
    total.add(inc);
    const double t = total.value();
    res.levels = k + 1;
    if (!std::isfinite(t) || t > L.inf_cap) {
      res.divergent = true;
      break;
    }
    if (k >= L.min_levels) {
      const double t3 = totals[k % 3];
      if (t3 > 0.0 && t / t3 > L.div_factor) {
        res.divergent = true;
        break;
      }
      if (std::isfinite(prev_inc) && prev_inc > q.abs_tol && inc >= L.nondecay * prev_inc) {
        if (++nondecay_streak >= 3) {
          res.divergent = true;
          break;
        }
      } else {
        nondecay_streak = 0;
      }
    }
    totals[k % 3] = t;
    if (k >= 2 && std::abs(inc) <= std::max(q.abs_tol, q.rel_tol * std::abs(t))) break;
    prev_inc = inc;
    hi = lo;
  }
  res.value = res.divergent ? std::numeric_limits<double>::infinity() : total.value();
  return res;
}

}  // namespace detail

/// Integrates f over [a, b] allowing an integrable or divergent blow-up at
/// either endpoint.  Divergence is reported, not thrown.
template <class F>
inline LadderResult integrate_graded(F&& f, double a, double b, bool singular_left,
                                     bool singular_right, const QuadOptions& q = {},
                                     const LadderOptions& L = {}) {
  if (!(b > a)) return {};
  if (singular_left && singular_right) {
    const double m = 0.5 * (a + b);
    const auto left = integrate_graded(f, a, m, true, false, q, L);
    const auto right = integrate_graded(f, m, b, false, true, q, L);
    LadderResult res;
    res.divergent = left.divergent || right.divergent;
    res.levels = std::max(left.levels, right.levels);
    res.value = res.divergent ? std::numeric_limits<double>::infinity()
                              : left.value + right.value;
    return res;
  }
  if (singular_left) return detail::ladder_left(f, a, b, q, L);
  if (singular_right) {
    auto g = [&f, a, b](double x) { return f(a + b - x); };
    return detail::ladder_left(g, a, b, q, L);
  }
  LadderResult res;
  res.value = adaptive_gk15(f, a, b, q);
  res.levels = 1;
  res.divergent = !std::isfinite(res.value) || res.value > L.inf_cap;
  if (res.divergent) res.value = std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace orlicz
