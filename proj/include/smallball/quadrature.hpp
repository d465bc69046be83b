#pragma once

// Adaptive Gauss-Kronrod (7/15) integration, Gauss-Legendre rules and an
// oscillatory driver with Wynn epsilon extrapolation. The adaptive routines
// are templates over the value type so the same code integrates real and
// complex integrands.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace smallball::quad {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class V>
struct Result {
  V value{};
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Segment {
  double a, b;
  V value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
template <class F>
auto gauss_kronrod15(F&& f, double a, double b) {
  using V = decltype(f(a));
  using detail::kWg;
  using detail::kWgk;
  using detail::kXgk;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  V fv[15];
  fv[7] = f(centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(centre - dx);
    fv[14 - j] = f(centre + dx);
  }
  V kronrod = kWgk[7] * fv[7];
  V gauss = kWg[3] * fv[7];
  double resabs = kWgk[7] * magnitude(fv[7]);
  for (int j = 0; j < 7; ++j) {
    kronrod += kWgk[j] * (fv[j] + fv[14 - j]);
    resabs += kWgk[j] * (magnitude(fv[j]) + magnitude(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv[j] + fv[14 - j]);
  }
  const V mean = 0.5 * kronrod;
  double resasc = kWgk[7] * magnitude(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (magnitude(fv[j] - mean) + magnitude(fv[14 - j] - mean));

  const double scale = std::abs(half);
  Result<V> out;
  out.value = kronrod * half;
  resabs *= scale;
  resasc *= scale;
  double err = magnitude((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  out.error = err;
  out.evaluations = 15;
  return out;
}

/// Globally adaptive integration over [points.front(), points.back()]; the
/// interior points are used as initial breakpoints.
template <class F>
auto integrate(F&& f, const std::vector<double>& points, const Options& opt = {}) {
  using V = decltype(f(points.front()));
  using Seg = detail::Segment<V>;
  std::priority_queue<Seg> heap;
  Result<V> total;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    auto r = gauss_kronrod15(f, points[i], points[i + 1]);
    heap.push({points[i], points[i + 1], r.value, r.error});
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  int intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * magnitude(total.value));
    if (total.error <= target) break;
    if (intervals >= opt.max_intervals) {
      total.converged = false;
      break;
    }
    Seg worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      total.converged = false;
      break;
    }
    heap.pop();
    auto left = gauss_kronrod15(f, worst.a, mid);
    auto right = gauss_kronrod15(f, mid, worst.b);
    total.value += left.value + right.value - worst.value;
    total.error += left.error + right.error - worst.error;
    total.evaluations += 30;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++intervals;
  }
  // Re-sum to shed the drift of the running update.
  V value{};
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  total.value = value;
  total.error = error;
  return total;
}

template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}) {
  return integrate(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

/// Integral over [a, inf) through x = a / t, suited to algebraically decaying
/// integrands (requires a > 0).
template <class F>
auto integrate_reciprocal_tail(F&& f, double a, const Options& opt = {}) {
  auto g = [&](double t) { return f(a / t) * (a / (t * t)); };
  return integrate(g, 0.0, 1.0, opt);
}

/// Integral over [a, inf) through x = a + (1 - t) / t.
template <class F>
auto integrate_to_infinity(F&& f, double a, const Options& opt = {}) {
  auto g = [&](double t) {
    const double s = (1.0 - t) / t;
    return f(a + s) * (1.0 / (t * t));
  };
  return integrate(g, 0.0, 1.0, opt);
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Wynn epsilon extrapolation of a sequence of partial sums.
class WynnEpsilon {
 public:
  void push(double partial_sum);
  /// Best current limit estimate (the last partial sum before three are known).
  [[nodiscard]] double estimate() const;
  [[nodiscard]] std::size_t size() const { return sums_.size(); }

 private:
  std::vector<double> sums_;
};

struct OscillatoryOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_periods = 20000;
  Options panel{};
};

/// Integrates f over [0, inf) for integrands whose tail oscillates with a
/// known half period. The first half period is pre-split geometrically from
/// `first_scale`; afterwards each half period is one panel. Stops when the
/// caller's remainder bound R(U) >= |int_U^inf f| is small enough or the
/// extrapolated partial sums settle.
template <class F, class Bound>
Result<double> integrate_oscillatory(F&& f, double half_period, double first_scale,
                                     Bound&& remainder_bound,
                                     const OscillatoryOptions& opt = {}) {
  Result<double> out;
  std::vector<double> first{0.0};
  for (double p = first_scale; p < half_period; p *= 2.0) first.push_back(p);
  first.push_back(half_period);

  Options panel = opt.panel;
  panel.abs_tol = std::max(opt.abs_tol * 0.1, 1e-300);
  auto head = integrate(f, first, panel);
  double sum = head.value;
  double qerr = head.error;
  out.evaluations = head.evaluations;
  out.converged = head.converged;

  WynnEpsilon wynn;
  wynn.push(sum);
  double previous = sum;
  double upper = half_period;
  for (int k = 1; k <= opt.max_periods; ++k) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(sum));
    const double rem = remainder_bound(upper);
    if (rem <= 0.25 * target) {
      out.value = sum;
      out.error = qerr + rem;
      return out;
    }
    const double lo = upper;
    upper = half_period * static_cast<double>(k + 1);
    auto piece = integrate(f, lo, upper, panel);
    sum += piece.value;
    qerr += piece.error;
    out.evaluations += piece.evaluations;
    out.converged = out.converged && piece.converged;
    wynn.push(sum);
    const double est = wynn.estimate();
    if (wynn.size() >= 6) {
      const double diff = std::abs(est - previous);
      if (diff <= 0.25 * target) {
        out.value = est;
        out.error = qerr + diff;
        return out;
      }
    }
    previous = est;
  }
  out.value = wynn.estimate();
  out.error = qerr + remainder_bound(upper);
  out.converged = false;
  return out;
}

}  // namespace smallball::quad
