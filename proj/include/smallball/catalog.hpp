#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smallball/spectrum.hpp"

namespace smallball {

/// Families known to catalog(); listed in UsageError messages.
std::vector<std::string> catalog_names();

/// Named spectrum families:
///   brownian       {truncate = 0}      lambda_n = 1 / ((n - 1/2)^2 pi^2)
///   power          {scale, exponent, shift = 0, offset = 0, head = 0}
///   stretched_exp  {C, alpha, scale = 1, head = 0}
///   explicit       {values: [...]}
/// `truncate` / `head` materialise that many leading terms; the analytic tail
/// always continues behind them.
Spectrum catalog(std::string_view name, const nlohmann::json& params = nlohmann::json::object());

}  // namespace smallball
