#pragma once

// Comparing small-ball probabilities of two spectra a (P) and b (P~):
//  * exact level: if prod a_n / b_n = P converges, P~(r) ~ sqrt(P) P(r);
//  * log level: ln P~(r) ~ ln P(r) whenever the counting functions are
//    equivalent and M(hx)/M(x) stays away from 1 for h > 1.

#include <string>
#include <vector>

#include "smallball/counting.hpp"
#include "smallball/spectrum.hpp"

namespace smallball {

struct LiProduct {
  bool convergent = false;
  double value = 0.0;       // prod a_n / b_n
  double log_value = 0.0;   // sum ln(a_n / b_n)
  double remainder_bound = 0.0;  // bound on the error of log_value
  std::size_t head_terms = 0;    // terms multiplied explicitly
  std::string reason;            // why the product diverges, if it does
};

/// Terms multiplied explicitly before the tail models take over.
inline constexpr std::size_t kProductHead = 10000;

LiProduct li_product(const Spectrum& a, const Spectrum& b);

struct ComparisonRow {
  double r = 0.0;
  double P_a = NAN;
  double P_b = NAN;
  double exact_ratio = NAN;  // P_b / P_a from the saddle formula
  double check_ratio = NAN;  // P_b / P_a from contour inversion
  double logP_a = NAN;
  double logP_b = NAN;
  double log_ratio = NAN;    // ln P_b / ln P_a
};

struct ComparisonReport {
  LiProduct product;
  std::vector<ComparisonRow> rows;
  std::string exact_method = "saddle";
  std::string check_method = "contour";
  std::string log_method = "log_saddle";
  /// Advisory growth-condition verdict on a's counting function.
  bool growth_checked = false;
  bool growth_ok = true;
  std::vector<std::string> warnings;
};

/// Exact-level ratios along a decreasing r-grid; requires a convergent product.
ComparisonReport exact_ratio_check(const Spectrum& a, const Spectrum& b, const std::vector<double>& r_grid);

/// Log-level ratios along a decreasing r-grid, with the growth gate as a warning.
ComparisonReport loglevel_ratio(const Spectrum& a, const Spectrum& b, const std::vector<double>& r_grid);

/// Both of the above on one grid; exact columns only when the product converges.
ComparisonReport compare_spectra(const Spectrum& a, const Spectrum& b, const std::vector<double>& r_grid);

/// Grids used by the advisory growth gate for a spectrum.
GrowthReport growth_gate(const Spectrum& a);

}  // namespace smallball
