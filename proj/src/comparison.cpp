#include "smallball/comparison.hpp"

#include <cmath>

#include "smallball/errors.hpp"
#include "smallball/exactdist.hpp"
#include "smallball/saddle.hpp"
#include "smallball/series.hpp"

namespace smallball {

namespace {

void check_grid(const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw UsageError("comparison: empty r grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0) || !std::isfinite(r_grid[i])) throw DomainError("comparison: r must be positive");
    if (i > 0 && !(r_grid[i] < r_grid[i - 1])) throw DomainError("comparison: r grid must be decreasing");
  }
}

/// Empty when ln(a_n / b_n) is summable for the two tail models.
std::string tail_divergence(const TailModel& ta, const TailModel& tb) {
  if (ta.index() != tb.index()) return "tail models of different families have a non-summable log-ratio";
  if (const auto* pa = std::get_if<PowerTail>(&ta)) {
    const auto& pb = std::get<PowerTail>(tb);
    if (pa->exponent != pb.exponent) return "power tails with different exponents";
    if (pa->scale != pb.scale) return "power tails with different scales (constant ratio)";
    // ln ratio ~ p (shift_a - shift_b) / n: harmonic, not summable.
    if (pa->shift != pb.shift) return "power tails with different shifts (log-ratio ~ 1/n)";
    return {};
  }
  const auto& sa = std::get<StretchedExpTail>(ta);
  const auto& sb = std::get<StretchedExpTail>(tb);
  if (sa.alpha != sb.alpha || sa.C != sb.C) return "stretched-exponential tails with different rates";
  if (sa.scale != sb.scale) return "stretched-exponential tails with constant ratio " + std::to_string(sa.scale / sb.scale);
  return {};
}

/// ln(a(n) / b(n)) for tail models that passed tail_divergence, written so
/// that no cancellation occurs when the ratio is close to 1.
double tail_log_ratio(const TailModel& ta, const TailModel& tb, double n) {
  if (const auto* pa = std::get_if<PowerTail>(&ta)) {
    const auto& pb = std::get<PowerTail>(tb);
    const double base = std::pow(n - pa->shift, pa->exponent);
    return std::log1p((pb.offset - pa->offset) / (base + pa->offset));
  }
  return 0.0;
}

}  // namespace

LiProduct li_product(const Spectrum& a, const Spectrum& b) {
  LiProduct out;
  if (a.has_tail() != b.has_tail())
    throw UsageError("li_product: one spectrum is finite and the other infinite");
  if (!a.has_tail()) {
    if (a.head().size() != b.head().size())
      throw UsageError("li_product: finite spectra of different lengths (" + std::to_string(a.head().size()) +
                       " vs " + std::to_string(b.head().size()) + ")");
    out.convergent = true;
    out.head_terms = a.head().size();
    for (std::size_t i = 0; i < out.head_terms; ++i) out.log_value += std::log(a.head()[i] / b.head()[i]);
    out.value = std::exp(out.log_value);
    return out;
  }
  out.reason = tail_divergence(a.tail(), b.tail());
  if (!out.reason.empty()) return out;

  const std::size_t H = std::max({a.head().size(), b.head().size(), kProductHead});
  auto term = [&](std::size_t n) { return std::log(a.value(n) / b.value(n)); };
  out.log_value = kernels::blocked_sum<double>(H, [&](std::size_t i) { return term(i + 1); });
  auto rest = series::tail(
      [&](double n) { return tail_log_ratio(a.tail(), b.tail(), n); }, static_cast<double>(H + 1));
  out.log_value += rest.value;
  out.remainder_bound = rest.bound + 1e-16 * static_cast<double>(H);
  out.head_terms = H;
  out.convergent = true;
  out.value = std::exp(out.log_value);
  return out;
}

GrowthReport growth_gate(const Spectrum& a) {
  const double top = a.value(1);
  std::vector<double> x_grid;
  for (int k = 1; k <= 24; ++k) x_grid.push_back(top * std::pow(10.0, -0.5 * k));
  return check_growth_condition(CountingFunction::empirical(a), {2.0, 4.0}, x_grid);
}

ComparisonReport exact_ratio_check(const Spectrum& a, const Spectrum& b, const std::vector<double>& r_grid) {
  check_grid(r_grid);
  ComparisonReport rep;
  rep.product = li_product(a, b);
  if (!rep.product.convergent)
    throw OutOfRegimeError("exact_ratio_check: the eigenvalue ratio product diverges (" + rep.product.reason + ")");
  for (double r : r_grid) {
    ComparisonRow row;
    row.r = r;
    const auto ea = small_ball_estimate(a, r);
    const auto eb = small_ball_estimate(b, r);
    row.P_a = ea.probability;
    row.P_b = eb.probability;
    row.exact_ratio = std::exp(eb.log_probability - ea.log_probability);
    const auto ca = cdf_contour(a, r);
    const auto cb = cdf_contour(b, r);
    row.check_ratio = std::exp(cb.log_probability - ca.log_probability);
    rep.rows.push_back(row);
  }
  return rep;
}

ComparisonReport loglevel_ratio(const Spectrum& a, const Spectrum& b, const std::vector<double>& r_grid) {
  check_grid(r_grid);
  ComparisonReport rep;
  rep.product = li_product(a, b);
  const GrowthReport gate = growth_gate(a);
  rep.growth_checked = true;
  rep.growth_ok = gate.pass;
  if (!gate.pass)
    rep.warnings.push_back("growth condition M(hx)/M(x) > 1 not evident for the first spectrum; "
                           "log-level comparison is not guaranteed");
  for (double r : r_grid) {
    ComparisonRow row;
    row.r = r;
    row.logP_a = log_small_ball_estimate(a, r);
    row.logP_b = log_small_ball_estimate(b, r);
    row.log_ratio = row.logP_b / row.logP_a;
    rep.rows.push_back(row);
  }
  return rep;
}

ComparisonReport compare_spectra(const Spectrum& a, const Spectrum& b, const std::vector<double>& r_grid) {
  ComparisonReport rep = loglevel_ratio(a, b, r_grid);
  if (!rep.product.convergent) return rep;
  const ComparisonReport exact = exact_ratio_check(a, b, r_grid);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    rep.rows[i].P_a = exact.rows[i].P_a;
    rep.rows[i].P_b = exact.rows[i].P_b;
    rep.rows[i].exact_ratio = exact.rows[i].exact_ratio;
    rep.rows[i].check_ratio = exact.rows[i].check_ratio;
  }
  return rep;
}

}  // namespace smallball
