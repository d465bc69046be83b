#include "smallball/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "smallball/errors.hpp"

namespace smallball {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double PowerTail::operator()(double n) const {
  return scale / (std::pow(n - shift, exponent) + offset);
}

double PowerTail::index_at(double lambda) const {
  if (lambda <= 0.0) return INFINITY;
  const double v = scale / lambda - offset;
  if (v <= 0.0) return -INFINITY;
  return shift + std::pow(v, 1.0 / exponent);
}

void PowerTail::validate() const {
  if (!finite_positive(scale)) throw DomainError("power tail: scale must be positive");
  if (!(std::isfinite(exponent) && exponent > 1.0))
    throw DomainError("power tail: exponent must exceed 1 for a summable spectrum");
  if (!(std::isfinite(shift) && shift < 1.0)) throw DomainError("power tail: shift must be < 1");
  if (!(std::isfinite(offset) && offset >= 0.0)) throw DomainError("power tail: offset must be >= 0");
}

double StretchedExpTail::operator()(double n) const {
  return scale * std::exp(-C * std::pow(std::numbers::pi * n, alpha));
}

double StretchedExpTail::index_at(double lambda) const {
  if (lambda <= 0.0) return INFINITY;
  const double l = std::log(scale / lambda);
  if (l <= 0.0) return -INFINITY;
  return std::pow(l / C, 1.0 / alpha) / std::numbers::pi;
}

void StretchedExpTail::validate() const {
  if (!finite_positive(C)) throw DomainError("stretched_exp tail: C must be positive");
  if (!finite_positive(alpha)) throw DomainError("stretched_exp tail: alpha must be positive");
  if (!finite_positive(scale)) throw DomainError("stretched_exp tail: scale must be positive");
}

Spectrum::Spectrum(std::vector<double> head, TailModel tail) : head_(std::move(head)), tail_(std::move(tail)) {
  for (std::size_t i = 0; i < head_.size(); ++i) {
    if (!finite_positive(head_[i]))
      throw ValidationError("spectrum: eigenvalue " + std::to_string(i + 1) + " is not a positive finite number");
    if (i > 0 && head_[i] > head_[i - 1])
      throw ValidationError("spectrum: head must be non-increasing (index " + std::to_string(i + 1) + ")");
  }
  std::visit(
      [](const auto& m) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, std::monostate>) m.validate();
      },
      tail_);
  if (has_tail() && !head_.empty()) {
    const double first = tail_value(static_cast<double>(tail_start()));
    if (head_.back() < first * (1.0 - 1e-12))
      throw ValidationError("spectrum: last head value " + number(head_.back()) +
                            " is below the first tail value " + number(first));
  }
  if (!has_tail() && head_.empty()) throw ValidationError("spectrum: no eigenvalues");
}

Spectrum Spectrum::materialised(TailModel tail, std::size_t head) {
  Spectrum bare = from_tail(tail);
  std::vector<double> values(head);
  for (std::size_t i = 0; i < head; ++i) values[i] = bare.tail_value(static_cast<double>(i + 1));
  return Spectrum(std::move(values), std::move(tail));
}

double Spectrum::tail_value(double n) const {
  return std::visit(
      [n](const auto& m) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, std::monostate>)
          return 0.0;
        else
          return m(n);
      },
      tail_);
}

double Spectrum::value(std::size_t n) const {
  if (n == 0) throw DomainError("spectrum index is 1-based");
  if (n <= head_.size()) return head_[n - 1];
  if (!has_tail()) throw DomainError("spectrum index " + std::to_string(n) + " beyond a finite spectrum");
  return tail_value(static_cast<double>(n));
}

std::uint64_t Spectrum::tail_count_above(double lambda) const {
  if (!has_tail()) return 0;
  const double n0 = static_cast<double>(tail_start());
  const double x = std::visit(
      [lambda](const auto& m) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, std::monostate>)
          return -INFINITY;
        else
          return m.index_at(lambda);
      },
      tail_);
  if (x >= kMaxCountIndex) {
    throw UnboundedCountError("counting: threshold " + number(lambda) +
                              " is below the representable tail floor " +
                              number(tail_value(kMaxCountIndex)));
  }
  double n = x < n0 ? n0 - 1.0 : std::floor(x);
  while (n + 1.0 >= n0 && tail_value(n + 1.0) > lambda) n += 1.0;
  while (n >= n0 && !(tail_value(n) > lambda)) n -= 1.0;
  return n >= n0 ? static_cast<std::uint64_t>(n - n0 + 1.0) : 0;
}

std::uint64_t Spectrum::counting(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("counting: threshold must be positive");
  const auto it = std::partition_point(head_.begin(), head_.end(), [lambda](double v) { return v > lambda; });
  const auto in_head = static_cast<std::uint64_t>(it - head_.begin());
  if (in_head < head_.size()) return in_head;
  return in_head + tail_count_above(lambda);
}

series::Sum<double> Spectrum::cumulative_mass(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("cumulative_mass: threshold must be positive");
  const auto it = std::partition_point(head_.begin(), head_.end(), [lambda](double v) { return v > lambda; });
  const auto above = static_cast<std::size_t>(it - head_.begin());
  series::Sum<double> out;
  out.value = lambda * static_cast<double>(above);
  for (std::size_t i = above; i < head_.size(); ++i) out.value += head_[i];
  if (!has_tail()) return out;
  const auto identity = [](double v) { return v; };
  double n0 = static_cast<double>(tail_start());
  if (above == head_.size()) {
    const std::uint64_t c = tail_count_above(lambda);
    out.value += lambda * static_cast<double>(c);
    n0 += static_cast<double>(c);
  }
  const auto rest = sum_tail_from(identity, n0);
  out.value += rest.value;
  out.bound += rest.bound;
  return out;
}

series::Sum<double> Spectrum::total() const {
  return sum([](double v) { return v; });
}

series::Sum<double> Spectrum::tail_mass(std::size_t N) const {
  series::Sum<double> out;
  for (std::size_t i = N; i < head_.size(); ++i) out.value += head_[i];
  if (has_tail()) {
    const double n0 = static_cast<double>(std::max(N + 1, tail_start()));
    const auto rest = sum_tail_from([](double v) { return v; }, n0);
    out.value += rest.value;
    out.bound += rest.bound;
  }
  return out;
}

std::size_t Spectrum::truncation_index(double mass) const {
  if (!(mass >= 0.0)) throw DomainError("truncation_index: mass must be non-negative");
  if (!has_tail()) {
    std::size_t N = head_.size();
    double acc = 0.0;
    while (N > 0 && acc + head_[N - 1] <= mass) acc += head_[--N];
    return N;
  }
  if (mass == 0.0) throw TruncationError("an infinite spectrum cannot be truncated with zero tail mass");
  std::size_t lo = 0;
  std::size_t hi = std::max<std::size_t>(head_.size(), 16);
  while (tail_mass(hi).value > mass) {
    lo = hi;
    hi *= 2;
    if (hi > (std::size_t{1} << 40))
      throw TruncationError("tail mass " + number(mass) + " needs more than 2^40 explicit terms");
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail_mass(mid).value > mass)
      lo = mid;
    else
      hi = mid;
  }
  return tail_mass(lo).value <= mass ? lo : hi;
}

std::vector<double> Spectrum::leading(std::size_t N) const {
  std::vector<double> out(N);
  for (std::size_t n = 1; n <= N; ++n) out[n - 1] = value(n);
  return out;
}

Spectrum Spectrum::scaled(double c) const {
  if (!finite_positive(c)) throw DomainError("scale factor must be positive");
  std::vector<double> head = head_;
  for (double& v : head) v *= c;
  TailModel tail = std::visit(
      [c](auto m) -> TailModel {
        if constexpr (!std::is_same_v<decltype(m), std::monostate>) m.scale *= c;
        return m;
      },
      tail_);
  return Spectrum(std::move(head), std::move(tail));
}

std::string describe(const TailModel& tail) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, std::monostate>) {
          return "none";
        } else if constexpr (std::is_same_v<M, PowerTail>) {
          return "power(scale=" + number(m.scale) + ", exponent=" + number(m.exponent) +
                 ", shift=" + number(m.shift) + ", offset=" + number(m.offset) + ")";
        } else {
          return "stretched_exp(C=" + number(m.C) + ", alpha=" + number(m.alpha) +
                 ", scale=" + number(m.scale) + ")";
        }
      },
      tail);
}

}  // namespace smallball
