#pragma once

// Tail sums of eigenvalue series: sum_{n >= n0} h(n) where h is a smooth,
// eventually monotone function of a continuous index. The first block of
// terms is added directly; the rest is replaced by the midpoint integral
// int_{N - 1/2}^inf h(x) dx plus its leading Euler-Maclaurin correction.

#include <cmath>
#include <cstddef>
#include <limits>

#include "smallball/quadrature.hpp"

namespace smallball::series {

template <class V>
struct Sum {
  V value{};
  double bound = 0.0;  // absolute error bound on value
};

struct TailOptions {
  std::size_t direct_terms = 4096;
  double negligible = 1e-18;  // early stop once |term| < negligible * |partial|
  double rel_tol = 1e-13;
};

template <class H>
auto tail(H&& h, double n0, const TailOptions& opt = {}) {
  using quad::magnitude;
  using V = decltype(h(n0));
  Sum<V> out;
  V partial{};
  double prev_mag = 0.0;
  double abs_sum = 0.0;
  // running-sum rounding: at most k * u * sum |terms| after k additions
  auto rounding = [&](std::size_t k) {
    return static_cast<double>(k) * 0.5 * std::numeric_limits<double>::epsilon() * abs_sum;
  };
  for (std::size_t k = 0; k < opt.direct_terms; ++k) {
    const double n = n0 + static_cast<double>(k);
    const V term = h(n);
    partial += term;
    const double mag = magnitude(term);
    abs_sum += mag;
    if (mag == 0.0 && k > 0 && prev_mag == 0.0) {
      out.value = partial;
      out.bound = rounding(k);
      return out;
    }
    if (k >= 2 && prev_mag > 0.0 && mag <= opt.negligible * magnitude(partial)) {
      const double ratio = mag / prev_mag;
      if (ratio < 1.0) {
        out.value = partial;
        out.bound = mag * ratio / (1.0 - ratio) + rounding(k);
        return out;
      }
    }
    prev_mag = mag;
  }
  const double last = n0 + static_cast<double>(opt.direct_terms) - 1.0;
  quad::Options qo;
  qo.rel_tol = opt.rel_tol;
  qo.abs_tol = std::max(opt.rel_tol * magnitude(partial), 1e-300);
  auto rest = quad::integrate_reciprocal_tail(h, last + 0.5, qo);
  // Midpoint defect h'(last + 1/2) / 24 from a centred difference; what
  // remains is of order h''' and bounded by a second difference.
  const V h0 = h(last - 1.0), h1 = h(last), h2 = h(last + 1.0);
  out.value = partial + rest.value + (h2 - h1) / 24.0;
  out.bound = rest.error + magnitude(h2 - 2.0 * h1 + h0) / 8.0 + rounding(opt.direct_terms);
  return out;
}

}  // namespace smallball::series
