#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cifc/ldc/gains.hpp"

namespace cifc::ldc {

/// Exact rational, always stored reduced with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct BoundTerm {
  std::string label;
  std::int64_t value;
};

enum class SymRegime {
  General,             ///< nd != ni, nd > 0
  Mac,                 ///< nd == ni > 0: every receiver sees the same sum
  BroadcastDegenerate, ///< nd == 0 < ni: direct links are dead
  Zero,                ///< nd == ni == 0, taken as 0 by continuity
};

/// Sum-rate upper bound in bits per channel use, with its labelled terms.
struct SumRateBound {
  std::int64_t value = 0;
  std::vector<BoundTerm> terms;
  SymRegime regime = SymRegime::General;
  /// Only for the 3-user bound: true when the third term is positive.
  bool third_user_active = false;
};

/// Maximum conditional entropy of (S^{m-c} x + S^{m-d} y) given
/// (S^{m-a} x + S^{m-b} y) over binary vectors x, y.
std::int64_t f_function(int c, int d, int a, int b);

/// Sum-capacity bound of the 3-user channel with arbitrary gains.
/// Throws InvalidArgument unless g.k() == 3.
SumRateBound ldc3_sum_outer(const LdcGains& g);

/// Sum capacity of the symmetric K-user channel.
SumRateBound ldc_k_sym_sum_capacity(int nd, int ni, std::size_t k);

/// K*max{1,a} - a with a = ni/nd, in exact arithmetic. Requires nd > 0.
Rational normalized_sym_capacity(int nd, int ni, std::size_t k);

}  // namespace cifc::ldc
