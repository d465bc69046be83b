#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "smallball/kernels.hpp"
#include "smallball/series.hpp"

namespace smallball {

/// lambda_n = scale / ((n - shift)^exponent + offset).
///
/// shift = offset = 0 is the plain power law a * n^-p; shift = 1/2 gives the
/// Brownian motion spectrum and offset = 1 the sequence 1 / (n^2 + 1).
struct PowerTail {
  double scale = 1.0;
  double exponent = 2.0;
  double shift = 0.0;
  double offset = 0.0;

  [[nodiscard]] double operator()(double n) const;
  /// Continuous index at which the model equals `lambda` (-inf if never).
  [[nodiscard]] double index_at(double lambda) const;
  void validate() const;
  bool operator==(const PowerTail&) const = default;
};

/// lambda_n = scale * exp(-C (pi n)^alpha).
struct StretchedExpTail {
  double C = 1.0;
  double alpha = 1.0;
  double scale = 1.0;

  [[nodiscard]] double operator()(double n) const;
  [[nodiscard]] double index_at(double lambda) const;
  void validate() const;
  bool operator==(const StretchedExpTail&) const = default;
};

using TailModel = std::variant<std::monostate, PowerTail, StretchedExpTail>;

/// Largest index for which counts are reported; beyond it a count is not
/// exactly representable in a double.
inline constexpr double kMaxCountIndex = 9007199254740992.0;  // 2^53

/// A positive summable eigenvalue sequence: an explicit non-increasing head
/// lambda_1..lambda_H followed, optionally, by a parametric tail model that
/// supplies lambda_n for n > H. Values are immutable after construction.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> head, TailModel tail = {});

  static Spectrum explicit_values(std::vector<double> values) { return Spectrum(std::move(values)); }
  /// The model alone from n = 1, no explicit head.
  static Spectrum from_tail(TailModel tail) { return Spectrum({}, std::move(tail)); }
  /// First `head` terms of the model materialised, the model beyond.
  static Spectrum materialised(TailModel tail, std::size_t head);

  [[nodiscard]] std::span<const double> head() const { return head_; }
  [[nodiscard]] const TailModel& tail() const { return tail_; }
  [[nodiscard]] bool has_tail() const { return !std::holds_alternative<std::monostate>(tail_); }
  /// First (1-based) index served by the tail model.
  [[nodiscard]] std::size_t tail_start() const { return head_.size() + 1; }

  /// lambda_n, 1-based.
  [[nodiscard]] double value(std::size_t n) const;
  [[nodiscard]] double tail_value(double n) const;

  /// #{n : lambda_n > lambda}.
  [[nodiscard]] std::uint64_t counting(double lambda) const;
  /// M(lambda) = int_0^lambda N(t) dt = sum_n min(lambda_n, lambda).
  [[nodiscard]] series::Sum<double> cumulative_mass(double lambda) const;
  [[nodiscard]] series::Sum<double> total() const;
  /// sum_{n > N} lambda_n.
  [[nodiscard]] series::Sum<double> tail_mass(std::size_t N) const;
  /// Smallest N with tail_mass(N) <= mass.
  [[nodiscard]] std::size_t truncation_index(double mass) const;
  /// lambda_1..lambda_N.
  [[nodiscard]] std::vector<double> leading(std::size_t N) const;
  /// Every eigenvalue multiplied by c > 0.
  [[nodiscard]] Spectrum scaled(double c) const;

  /// sum_{n >= 1} f(lambda_n); tail via series::tail.
  template <class F>
  auto sum(F&& f) const {
    using V = std::decay_t<decltype(f(1.0))>;
    series::Sum<V> out;
    out.value = kernels::blocked_sum<V>(head_.size(), [&](std::size_t i) { return f(head_[i]); });
    if (has_tail()) {
      auto t = sum_tail_from(f, static_cast<double>(tail_start()));
      out.value += t.value;
      out.bound += t.bound;
    }
    return out;
  }

  /// sum_{n >= n0} f(model(n)) over the tail model (n0 >= tail_start()).
  template <class F>
  auto sum_tail_from(F&& f, double n0) const {
    return std::visit(
        [&](const auto& model) {
          using M = std::decay_t<decltype(model)>;
          using V = std::decay_t<decltype(f(1.0))>;
          if constexpr (std::is_same_v<M, std::monostate>) {
            return series::Sum<V>{};
          } else {
            return series::tail([&](double n) { return f(model(n)); }, n0);
          }
        },
        tail_);
  }

  bool operator==(const Spectrum&) const = default;

 private:
  std::uint64_t tail_count_above(double lambda) const;

  std::vector<double> head_;
  TailModel tail_;
};

std::string describe(const TailModel& tail);

}  // namespace smallball
