#include "smallball/catalog.hpp"

#include <numbers>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

double number_or(const nlohmann::json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number()) throw UsageError(std::string("catalog: parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

double required(const nlohmann::json& p, const char* key, std::string_view family) {
  if (!p.contains(key))
    throw UsageError(std::string("catalog: family '") + std::string(family) + "' needs parameter '" + key + "'");
  return number_or(p, key, 0.0);
}

std::size_t count_or(const nlohmann::json& p, const char* key) {
  const double v = number_or(p, key, 0.0);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw UsageError(std::string("catalog: parameter '") + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<std::string> catalog_names() { return {"brownian", "power", "stretched_exp", "explicit"}; }

Spectrum catalog(std::string_view name, const nlohmann::json& params) {
  if (name == "brownian") {
    const PowerTail model{1.0 / (std::numbers::pi * std::numbers::pi), 2.0, 0.5, 0.0};
    return Spectrum::materialised(model, count_or(params, "truncate"));
  }
  if (name == "power") {
    const PowerTail model{required(params, "scale", name), required(params, "exponent", name),
                          number_or(params, "shift", 0.0), number_or(params, "offset", 0.0)};
    return Spectrum::materialised(model, count_or(params, "head"));
  }
  if (name == "stretched_exp") {
    const StretchedExpTail model{required(params, "C", name), required(params, "alpha", name),
                                 number_or(params, "scale", 1.0)};
    return Spectrum::materialised(model, count_or(params, "head"));
  }
  if (name == "explicit") {
    if (!params.contains("values") || !params.at("values").is_array())
      throw UsageError("catalog: family 'explicit' needs an array 'values'");
    std::vector<double> values;
    for (const auto& v : params.at("values")) {
      if (!v.is_number()) throw UsageError("catalog: explicit values must be numbers");
      values.push_back(v.get<double>());
    }
    return Spectrum::explicit_values(std::move(values));
  }
  std::string known;
  for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("catalog: unknown family '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace smallball
