#include "smallball/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "smallball/catalog.hpp"
#include "smallball/errors.hpp"

namespace smallball::io {

using nlohmann::json;

namespace {

double get_number(const json& j, const char* key) {
  if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double get_number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? get_number(j, key) : fallback;
}

std::string get_type(const json& j) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) throw ValidationError("missing string field 'type'");
  return j.at("type").get<std::string>();
}

std::vector<double> get_values(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ValidationError(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ValidationError(std::string("field '") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json tail_to_json(const TailModel& tail) {
  if (const auto* p = std::get_if<PowerTail>(&tail))
    return {{"type", "power"}, {"scale", p->scale}, {"exponent", p->exponent}, {"shift", p->shift}, {"offset", p->offset}};
  const auto& s = std::get<StretchedExpTail>(tail);
  return {{"type", "stretched_exp"}, {"C", s.C}, {"alpha", s.alpha}, {"scale", s.scale}};
}

TailModel tail_from_json(const json& j) {
  const std::string type = get_type(j);
  if (type == "power")
    return PowerTail{get_number(j, "scale"), get_number(j, "exponent"), get_number_or(j, "shift", 0.0),
                     get_number_or(j, "offset", 0.0)};
  if (type == "stretched_exp")
    return StretchedExpTail{get_number(j, "C"), get_number(j, "alpha"), get_number_or(j, "scale", 1.0)};
  throw ValidationError("tail type must be 'power' or 'stretched_exp', got '" + type + "'");
}

void write_line(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": malformed JSON (line " + std::to_string(line) + ", column " + std::to_string(column) + ")");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Spectrum spectrum_from_json(const json& j) {
  const std::string type = get_type(j);
  if (type == "kernel") {
    const KernelConfig k = kernel_from_json(j);
    return nystrom_spectrum(k.kernel, k.nodes);
  }
  if (type == "spliced") {
    if (!j.contains("tail")) throw ValidationError("spliced spectrum needs a 'tail'");
    return Spectrum(get_values(j, "head"), tail_from_json(j.at("tail")));
  }
  json params = j;
  params.erase("type");
  try {
    return catalog(type, params);
  } catch (const UsageError& e) {
    throw ValidationError(e.what());
  }
}

json spectrum_to_json(const Spectrum& s) {
  const std::vector<double> head(s.head().begin(), s.head().end());
  if (!s.has_tail()) return {{"type", "explicit"}, {"values", head}};
  // A head that is just the model materialised is written compactly.
  const Spectrum compact = Spectrum::materialised(s.tail(), head.size());
  if (compact == s) {
    json j = tail_to_json(s.tail());
    j["head"] = head.size();
    return j;
  }
  return {{"type", "spliced"}, {"head", head}, {"tail", tail_to_json(s.tail())}};
}

KernelConfig kernel_from_json(const json& j) {
  if (get_type(j) != "kernel") throw ValidationError("kernel spec must have type 'kernel'");
  if (!j.contains("name") || !j.at("name").is_string()) throw ValidationError("kernel spec needs a string 'name'");
  KernelConfig k;
  try {
    k.kernel.kind = kernel_kind_from_string(j.at("name").get<std::string>());
  } catch (const UsageError& e) {
    throw ValidationError(e.what());
  }
  k.kernel.C = get_number_or(j, "C", 1.0);
  if (j.contains("interval")) {
    const auto iv = get_values(j, "interval");
    if (iv.size() != 2) throw ValidationError("kernel 'interval' must be [a, b]");
    k.kernel.a = iv[0];
    k.kernel.b = iv[1];
  }
  const double nodes = get_number_or(j, "nodes", 200.0);
  if (!(nodes >= 2.0 && nodes == std::floor(nodes))) throw ValidationError("kernel 'nodes' must be an integer >= 2");
  k.nodes = static_cast<std::size_t>(nodes);
  if (j.contains("table")) {
    const json& t = j.at("table");
    KernelTable tab;
    tab.n = static_cast<std::size_t>(get_number(t, "n"));
    tab.values = get_values(t, "values");
    k.kernel.table = std::move(tab);
  }
  k.kernel.validate();
  return k;
}

json kernel_to_json(const KernelConfig& k) {
  json j = {{"type", "kernel"},
            {"name", to_string(k.kernel.kind)},
            {"C", k.kernel.C},
            {"interval", {k.kernel.a, k.kernel.b}},
            {"nodes", k.nodes}};
  if (k.kernel.table) j["table"] = {{"n", k.kernel.table->n}, {"values", k.kernel.table->values}};
  return j;
}

SlowVaryingPhi phi_from_json(const json& j) {
  const std::string type = get_type(j);
  if (type == "log_power") return SlowVaryingPhi::log_power(get_number(j, "c"), get_number(j, "beta"));
  if (type == "log_over_loglog") return SlowVaryingPhi::log_over_loglog(get_number(j, "c"));
  if (type == "custom") {
    if (!j.contains("samples") || !j.at("samples").is_array()) throw ValidationError("custom phi needs 'samples'");
    std::vector<std::pair<double, double>> samples;
    for (const auto& s : j.at("samples")) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
        throw ValidationError("custom phi samples must be [lambda, phi] pairs");
      samples.emplace_back(s[0].get<double>(), s[1].get<double>());
    }
    return SlowVaryingPhi::custom(std::move(samples));
  }
  throw ValidationError("unknown phi type '" + type + "' (known: log_power, log_over_loglog, custom)");
}

json phi_to_json(const SlowVaryingPhi& phi) {
  switch (phi.form()) {
    case SlowVaryingPhi::Form::log_power: return {{"type", "log_power"}, {"c", phi.c()}, {"beta", phi.beta()}};
    case SlowVaryingPhi::Form::log_over_loglog: return {{"type", "log_over_loglog"}, {"c", phi.c()}};
    case SlowVaryingPhi::Form::custom: {
      json samples = json::array();
      for (const auto& [l, v] : phi.samples()) samples.push_back({l, v});
      return {{"type", "custom"}, {"samples", samples}};
    }
  }
  return {};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_cdf_csv(std::ostream& os, const std::vector<CdfResult>& rows) {
  os << kCdfHeader << '\n';
  for (const auto& r : rows)
    write_line(os, {format_double(r.r), format_double(r.probability), r.method, format_double(r.err),
                    std::to_string(r.truncation_N), format_double(r.tail_mass)});
}

std::vector<CdfResult> read_cdf_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCdfHeader) throw ValidationError("CDF table: unexpected header");
  std::vector<CdfResult> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw ValidationError("CDF table: expected 6 columns in '" + line + "'");
    CdfResult r;
    try {
      r.r = std::stod(cells[0]);
      r.probability = std::stod(cells[1]);
      r.method = cells[2];
      r.err = std::stod(cells[3]);
      r.truncation_N = std::stoull(cells[4]);
      r.tail_mass = std::stod(cells[5]);
    } catch (const std::logic_error&) {
      throw ValidationError("CDF table: unparsable row '" + line + "'");
    }
    out.push_back(r);
  }
  return out;
}

json cdf_to_json(const std::vector<CdfResult>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"r", r.r},
                   {"probability", r.probability},
                   {"method", r.method},
                   {"err", r.err},
                   {"truncation_N", r.truncation_N},
                   {"tail_mass", r.tail_mass}});
  return arr;
}

CdfResult estimate_row(const SmallBallEstimate& e) {
  CdfResult r;
  r.r = e.r;
  r.probability = e.probability;
  r.log_probability = e.log_probability;
  r.method = "saddle";
  r.err = e.err;
  return r;
}

CdfResult log_estimate_row(double r_value, double log_value, double residual) {
  CdfResult r;
  r.r = r_value;
  r.probability = log_value;
  r.log_probability = log_value;
  r.method = "log_saddle";
  r.err = residual;
  return r;
}

void write_saddle_csv(std::ostream& os, const std::vector<SaddleState>& rows) {
  os << kSaddleHeader << '\n';
  for (const auto& s : rows)
    write_line(os, {format_double(s.r), format_double(s.u), format_double(s.L), format_double(s.L1),
                    format_double(s.L2)});
}

void write_comparison_csv(std::ostream& os, const ComparisonReport& rep) {
  if (rep.product.convergent)
    os << "# P: " << format_double(rep.product.value) << " bound " << format_double(rep.product.remainder_bound)
       << '\n';
  else
    os << "# P: divergent (" << rep.product.reason << ")\n";
  for (const auto& w : rep.warnings) os << "# warning: " << w << '\n';
  os << kComparisonHeader << '\n';
  for (const auto& r : rep.rows)
    write_line(os, {format_double(r.r), format_double(r.P_a), format_double(r.P_b), format_double(r.exact_ratio),
                    format_double(r.logP_a), format_double(r.logP_b), format_double(r.log_ratio)});
}

json comparison_to_json(const ComparisonReport& rep) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json rows = json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"r", r.r},
                    {"P_a", num(r.P_a)},
                    {"P_b", num(r.P_b)},
                    {"exact_ratio", num(r.exact_ratio)},
                    {"check_ratio", num(r.check_ratio)},
                    {"logP_a", num(r.logP_a)},
                    {"logP_b", num(r.logP_b)},
                    {"log_ratio", num(r.log_ratio)}});
  json product = rep.product.convergent
                     ? json{{"convergent", true}, {"value", rep.product.value}, {"remainder_bound", rep.product.remainder_bound}}
                     : json{{"convergent", false}, {"reason", rep.product.reason}};
  return {{"product", product},
          {"methods", {{"exact_ratio", rep.exact_method}, {"check_ratio", rep.check_method}, {"log_ratio", rep.log_method}}},
          {"growth_ok", rep.growth_ok},
          {"warnings", rep.warnings},
          {"rows", rows}};
}

void write_rcalpha_csv(std::ostream& os, const std::vector<RcAlphaRow>& rows) {
  os << kRcAlphaHeader << '\n';
  for (const auto& r : rows)
    write_line(os, {format_double(r.alpha), format_double(r.C), format_double(r.epsilon), format_double(r.log_asymp),
                    r.case_label});
}

json rcalpha_to_json(const std::vector<RcAlphaRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"alpha", r.alpha}, {"C", r.C}, {"epsilon", r.epsilon}, {"log_asymp", r.log_asymp}, {"case", r.case_label}});
  return arr;
}

}  // namespace smallball::io
