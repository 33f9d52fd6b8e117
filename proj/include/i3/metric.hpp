#pragma once

// Closed-form Individual Impact Index (i3) metrics.
//
//   i3(f)   = 1 - exp(-beta * f)
//   beta    = 1 / (3 pi phi)
//   lambda  = beta * phi = 1 / (3 pi)
//
// f is the impact-factor-weighted citation mass of an article and phi the
// number of journal titles in its category. Everything here is pure.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "i3/errors.hpp"

namespace i3 {

inline constexpr double kLambda = 1.0 / (3.0 * std::numbers::pi);

// Largest double strictly below one. i3 saturates here instead of rounding
// up to the asymptote once beta*f exceeds ~37.
inline constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2;

// Positive, finite rate constant.
class Beta {
 public:
  explicit Beta(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value))
      throw DomainError("beta must be positive and finite, got " + std::to_string(value));
  }
  double value() const noexcept { return value_; }
  auto operator<=>(const Beta&) const = default;

 private:
  double value_;
};

// Impact-factor-weighted citation mass, f >= 0.
class FScore {
 public:
  explicit FScore(double value) : value_(value) {
    if (!(value >= 0.0) || !std::isfinite(value))
      throw DomainError("f-score must be non-negative and finite, got " +
                        std::to_string(value));
  }
  double value() const noexcept { return value_; }
  auto operator<=>(const FScore&) const = default;

 private:
  double value_;
};

// Index value in [0, 1).
class I3Score {
 public:
  explicit I3Score(double value) : value_(value) {
    if (!(value >= 0.0 && value < 1.0))
      throw DomainError("i3 must lie in [0, 1), got " + std::to_string(value));
  }
  double value() const noexcept { return value_; }
  auto operator<=>(const I3Score&) const = default;

 private:
  double value_;
};

// Category coefficient together with the title count it came from.
struct BetaCoefficient {
  Beta beta;
  std::int64_t phi;
  double value() const noexcept { return beta.value(); }
};

inline BetaCoefficient compute_beta(std::int64_t phi) {
  if (phi < 1)
    throw DomainError("category title count must be >= 1, got " + std::to_string(phi));
  return {Beta{kLambda / static_cast<double>(phi)}, phi};
}

inline I3Score compute_i3(FScore f, Beta beta) {
  double x = beta.value() * f.value();
  double v = -std::expm1(-x);
  return I3Score{v < kBelowOne ? v : kBelowOne};
}

// Rate constant that maps `f` onto `target_i3`: -ln(1 - p) / f.
inline Beta solve_beta(double target_i3, FScore f) {
  if (!(target_i3 > 0.0 && target_i3 < 1.0))
    throw DomainError("target i3 must lie in (0, 1)");
  if (!(f.value() > 0.0)) throw DomainError("reference f-score must be positive");
  return Beta{-std::log1p(-target_i3) / f.value()};
}

// d i3 / d f = beta * exp(-beta f).
inline double i3_derivative(FScore f, Beta beta) {
  return beta.value() * std::exp(-beta.value() * f.value());
}

// Area under the i3 curve on [0, F]:  F + (exp(-beta F) - 1) / beta.
inline double i3_auc(FScore upper, Beta beta) {
  const double b = beta.value();
  const double x = b * upper.value();
  if (x < 1e-3) {
    // x + expm1(-x) = x^2/2 - x^3/6 + ... ; direct form cancels badly here.
    double term = x * x / 2.0, sum = 0.0;
    for (int k = 3; std::abs(term) > 1e-18 * (x * x / 2.0); ++k) {
      sum += term;
      term *= -x / k;
    }
    return sum / b;
  }
  return upper.value() + std::expm1(-x) / b;
}

// AUC(t) / AUC(full) without the truncation consistency check. Used where
// historical and current impact factors may legitimately push t past full.
inline double auc_ratio(FScore truncated, FScore full, Beta beta) {
  if (!(full.value() > 0.0)) throw DomainError("full f-score must be positive");
  return i3_auc(truncated, beta) / i3_auc(full, beta);
}

// Integral citation ratio: share of the full-history area accrued by the
// truncated score.
inline double cr_integral(FScore truncated, FScore full, Beta beta) {
  if (truncated > full)
    throw DomainError("truncated f-score exceeds full f-score; inconsistent ledger");
  return auc_ratio(truncated, full, beta);
}

// Simple citation ratio i3_t / i3_full. Values above one are returned as-is.
inline double cr_simple(I3Score truncated, I3Score full) {
  if (full.value() == 0.0)
    throw DomainError("citation ratio undefined for an article with zero i3");
  return truncated.value() / full.value();
}

}  // namespace i3
