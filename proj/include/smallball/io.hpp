#pragma once

// JSON schemas for spectra, kernels and counting models; CSV tables for
// results. Doubles are written with 17 significant digits so every value
// reads back bit-for-bit.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "smallball/comparison.hpp"
#include "smallball/exactdist.hpp"
#include "smallball/nystrom.hpp"
#include "smallball/saddle.hpp"
#include "smallball/slowvary.hpp"
#include "smallball/spectrum.hpp"

namespace smallball::io {

/// Parse JSON text; syntax errors become ValidationError with line and column.
nlohmann::json parse_json(const std::string& text, const std::string& source = "<input>");
nlohmann::json read_json_file(const std::string& path);

/// Spectrum schema, keyed by "type":
///   {"type":"explicit","values":[...]}
///   {"type":"power","scale":a,"exponent":p,"shift":s,"offset":o,"head":H}
///   {"type":"stretched_exp","C":c,"alpha":al,"scale":k,"head":H}
///   {"type":"brownian","truncate":H}
///   {"type":"spliced","head":[...],"tail":{power or stretched_exp}}
///   {"type":"kernel",...}  (eigenvalues by Nystrom discretisation)
Spectrum spectrum_from_json(const nlohmann::json& j);
nlohmann::json spectrum_to_json(const Spectrum& s);

/// {"type":"kernel","name":"brownian|constant|cauchy|gauss|tabulated","C":c,
///  "interval":[a,b],"nodes":n,"table":{"n":m,"values":[...]}}
struct KernelConfig {
  KernelSpec kernel;
  std::size_t nodes = 200;
};
KernelConfig kernel_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const KernelConfig& k);

/// {"type":"log_power","c":c,"beta":b} | {"type":"log_over_loglog","c":c} |
/// {"type":"custom","samples":[[lambda, phi], ...]}
SlowVaryingPhi phi_from_json(const nlohmann::json& j);
nlohmann::json phi_to_json(const SlowVaryingPhi& phi);

std::string format_double(double v);

/// r,probability,method,err,truncation_N,tail_mass
inline constexpr const char* kCdfHeader = "r,probability,method,err,truncation_N,tail_mass";
void write_cdf_csv(std::ostream& os, const std::vector<CdfResult>& rows);
std::vector<CdfResult> read_cdf_csv(std::istream& is);
nlohmann::json cdf_to_json(const std::vector<CdfResult>& rows);

/// Saddle estimates in the CdfResult schema: method "saddle" carries the
/// probability, method "log_saddle" carries L(u) + u r in the probability
/// column. Neither truncates, so truncation_N and tail_mass are 0.
CdfResult estimate_row(const SmallBallEstimate& e);
CdfResult log_estimate_row(double r, double log_value, double residual);

inline constexpr const char* kSaddleHeader = "r,u,L,L1,L2";
void write_saddle_csv(std::ostream& os, const std::vector<SaddleState>& rows);

inline constexpr const char* kComparisonHeader = "r,P_a,P_b,exact_ratio,logP_a,logP_b,log_ratio";
/// Preceded by "# P: <value> bound <b>" or "# P: divergent (<reason>)".
void write_comparison_csv(std::ostream& os, const ComparisonReport& rep);
nlohmann::json comparison_to_json(const ComparisonReport& rep);

struct RcAlphaRow {
  double alpha = 0.0;
  double C = 0.0;
  double epsilon = 0.0;
  double log_asymp = 0.0;
  std::string case_label;
};
inline constexpr const char* kRcAlphaHeader = "alpha,C,epsilon,log_asymp,case";
void write_rcalpha_csv(std::ostream& os, const std::vector<RcAlphaRow>& rows);
nlohmann::json rcalpha_to_json(const std::vector<RcAlphaRow>& rows);

}  // namespace smallball::io
