// smallball: small-ball probabilities of Gaussian processes from their
// eigenvalue spectra.
//
// Exit status: 0 success, 1 usage / input error, 2 outside the asymptotic or
// numerical regime of the requested method.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smallball/comparison.hpp"
#include "smallball/errors.hpp"
#include "smallball/exactdist.hpp"
#include "smallball/io.hpp"
#include "smallball/saddle.hpp"
#include "smallball/slowvary.hpp"

namespace sb = smallball;
using nlohmann::json;

namespace {

struct Config {
  std::string spectrum, phi, a, b, out;
  std::string format = "csv";
  std::string method = "inversion";
  std::vector<double> r, eps;
  double tol = 1e-10;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double C = 1.0, alpha = 1.0;
  std::optional<std::size_t> nodes;
  std::size_t count = 100;
  bool states = false;
};

sb::Spectrum load_spectrum(const std::string& path, const std::optional<std::size_t>& nodes) {
  if (path.empty()) throw sb::UsageError("--spectrum is required");
  json j = sb::io::read_json_file(path);
  if (nodes && j.is_object() && j.value("type", "") == "kernel") j["nodes"] = *nodes;
  return sb::io::spectrum_from_json(j);
}

std::vector<double> thresholds(const Config& c) {
  if (c.r.empty()) throw sb::UsageError("--r (or --r-grid) is required");
  for (double r : c.r)
    if (!(r > 0.0)) throw sb::DomainError("r must be positive, got " + sb::io::format_double(r));
  return c.r;
}

std::string emit_cdf(const Config& c, const std::vector<sb::CdfResult>& rows) {
  std::ostringstream os;
  if (c.format == "json")
    os << sb::io::cdf_to_json(rows).dump(2) << '\n';
  else
    sb::io::write_cdf_csv(os, rows);
  return os.str();
}

std::string run_eval(const Config& c) {
  const auto r_grid = thresholds(c);
  const sb::Spectrum s = load_spectrum(c.spectrum, c.nodes);
  std::vector<sb::CdfResult> rows;
  for (double r : r_grid) {
    if (c.method == "inversion")
      rows.push_back(sb::cdf_inversion(s, r, c.tol));
    else if (c.method == "contour")
      rows.push_back(sb::cdf_contour(s, r, c.tol));
    else
      rows.push_back(sb::cdf_monte_carlo(s, r, c.samples, c.seed));
  }
  return emit_cdf(c, rows);
}

std::string run_asymp(const Config& c) {
  const auto r_grid = thresholds(c);
  const sb::Spectrum s = load_spectrum(c.spectrum, c.nodes);
  std::vector<sb::CdfResult> rows;
  std::vector<sb::SaddleState> states;
  for (double r : r_grid) {
    const auto e = sb::small_ball_estimate(s, r);
    rows.push_back(sb::io::estimate_row(e));
    states.push_back(e.state);
  }
  if (!c.states) return emit_cdf(c, rows);
  std::ostringstream os;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& st : states)
      arr.push_back({{"r", st.r}, {"u", st.u}, {"L", st.L}, {"L1", st.L1}, {"L2", st.L2}});
    os << arr.dump(2) << '\n';
  } else {
    sb::io::write_saddle_csv(os, states);
  }
  return os.str();
}

std::string run_logasymp(const Config& c) {
  const auto r_grid = thresholds(c);
  std::vector<sb::CdfResult> rows;
  if (!c.phi.empty()) {
    const sb::SlowVaryingPhi phi = sb::io::phi_from_json(sb::io::read_json_file(c.phi));
    for (double r : r_grid) {
      auto row = sb::io::log_estimate_row(r, sb::log_asymp_slowvary(phi, r), 0.0);
      row.method = "slowvary";
      rows.push_back(row);
    }
    return emit_cdf(c, rows);
  }
  const sb::Spectrum s = load_spectrum(c.spectrum, c.nodes);
  for (double r : r_grid) {
    const auto st = sb::solve_saddle(s, r);
    rows.push_back(sb::io::log_estimate_row(r, st.L + st.u * r, std::abs(st.L1 + r)));
  }
  return emit_cdf(c, rows);
}

std::string run_spectrum(const Config& c) {
  const sb::Spectrum s = load_spectrum(c.spectrum, c.nodes);
  std::ostringstream os;
  if (c.format == "json") {
    os << sb::io::spectrum_to_json(s).dump(2) << '\n';
    return os.str();
  }
  const std::size_t n = s.has_tail() ? std::max(c.count, s.head().size()) : s.head().size();
  os << "n,lambda\n";
  for (std::size_t i = 1; i <= n; ++i) os << i << ',' << sb::io::format_double(s.value(i)) << '\n';
  return os.str();
}

std::string run_compare(const Config& c) {
  const auto r_grid = thresholds(c);
  if (c.a.empty() || c.b.empty()) throw sb::UsageError("compare needs --a and --b");
  const sb::Spectrum a = load_spectrum(c.a, c.nodes);
  const sb::Spectrum b = load_spectrum(c.b, c.nodes);
  const auto rep = sb::compare_spectra(a, b, r_grid);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  std::ostringstream os;
  if (c.format == "json")
    os << sb::io::comparison_to_json(rep).dump(2) << '\n';
  else
    sb::io::write_comparison_csv(os, rep);
  return os.str();
}

std::string run_rcalpha(const Config& c) {
  if (c.eps.empty()) throw sb::UsageError("--eps is required");
  const sb::RcAlphaParams p{c.C, c.alpha};
  std::vector<sb::io::RcAlphaRow> rows;
  for (double e : c.eps) rows.push_back({c.alpha, c.C, e, sb::rc_alpha_log_asymp(p, e), sb::rc_alpha_case(p)});
  std::ostringstream os;
  if (c.format == "json")
    os << sb::io::rcalpha_to_json(rows).dump(2) << '\n';
  else
    sb::io::write_rcalpha_csv(os, rows);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-ball probabilities of Gaussian processes from eigenvalue spectra"};
  app.require_subcommand(1, 1);
  Config c;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Output file (default: standard output)");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_r = [&](CLI::App* sub) {
    sub->add_option("--r,--r-grid", c.r, "Threshold(s) on the squared norm, comma separated")->delimiter(',');
  };
  auto add_spectrum = [&](CLI::App* sub) {
    sub->add_option("--spectrum", c.spectrum, "Spectrum JSON file");
    sub->add_option("--nodes", c.nodes, "Override the node count of a kernel spectrum");
  };

  auto* eval = app.add_subcommand("eval", "P{||X||^2 <= r} by inversion, contour integral or Monte Carlo");
  add_spectrum(eval);
  add_r(eval);
  eval->add_option("--method", c.method)->check(CLI::IsMember({"inversion", "contour", "monte_carlo"}));
  eval->add_option("--tol", c.tol, "Absolute (inversion) or relative (contour) accuracy");
  eval->add_option("--samples", c.samples, "Monte Carlo sample count");
  eval->add_option("--seed", c.seed, "Monte Carlo seed (64-bit unsigned)");
  add_output(eval);

  auto* asymp = app.add_subcommand("asymp", "Saddle-point estimate of P{||X||^2 <= r}");
  add_spectrum(asymp);
  add_r(asymp);
  asymp->add_flag("--states", c.states, "Emit the saddle states r,u,L,L1,L2 instead");
  add_output(asymp);

  auto* logasymp = app.add_subcommand("logasymp", "Log-level estimate of P{||X||^2 <= r}");
  add_spectrum(logasymp);
  logasymp->add_option("--phi", c.phi, "Slowly varying counting model JSON (instead of --spectrum)");
  add_r(logasymp);
  add_output(logasymp);

  auto* spectrum = app.add_subcommand("spectrum", "List eigenvalues of a spectrum or kernel");
  add_spectrum(spectrum);
  spectrum->add_option("--count", c.count, "Terms listed for an infinite spectrum");
  add_output(spectrum);

  auto* compare = app.add_subcommand("compare", "Exact- and log-level comparison of two spectra");
  compare->add_option("--a", c.a, "First spectrum JSON file");
  compare->add_option("--b", c.b, "Second spectrum JSON file");
  compare->add_option("--nodes", c.nodes, "Override the node count of kernel spectra");
  add_r(compare);
  add_output(compare);

  auto* rcalpha = app.add_subcommand("rcalpha", "Closed-form log asymptotics for spectral density exp(-C|xi|^alpha)");
  rcalpha->add_option("--C", c.C)->required();
  rcalpha->add_option("--alpha", c.alpha)->required();
  rcalpha->add_option("--eps", c.eps, "Radii, comma separated")->delimiter(',');
  add_output(rcalpha);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    std::string text;
    if (*eval) text = run_eval(c);
    else if (*asymp) text = run_asymp(c);
    else if (*logasymp) text = run_logasymp(c);
    else if (*spectrum) text = run_spectrum(c);
    else if (*compare) text = run_compare(c);
    else text = run_rcalpha(c);

    if (c.out.empty() || c.out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(c.out, std::ios::binary);
      if (!(out << text)) throw sb::UsageError("cannot write '" + c.out + "'");
    }
    return 0;
  } catch (const sb::OutOfRegimeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
