#include "cifc/ldc/bounds.hpp"

#include <algorithm>

#include "cifc/error.hpp"

namespace cifc::ldc {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InvalidArgument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::int64_t f_function(int c, int d, int a, int b) {
  const std::int64_t base = std::max(a, b);
  if (c - d != a - b) return std::max(c + b, a + d) - base;
  return std::max({a, b, c, d}) - base;
}

SumRateBound ldc3_sum_outer(const LdcGains& g) {
  if (g.k() != 3) throw InvalidArgument("ldc3_sum_outer: needs a 3-user channel");
  SumRateBound out;
  const std::int64_t t1 = std::max({g(0, 0), g(0, 1), g(0, 2)});
  const std::int64_t t2 = f_function(g(1, 1), g(1, 2), g(0, 1), g(0, 2));
  const std::int64_t t3 = std::max<std::int64_t>(0, g(2, 2) - std::max(g(0, 2), g(1, 2)));
  out.terms = {{"receiver1", t1}, {"receiver2_given_1", t2}, {"receiver3_given_12", t3}};
  out.value = t1 + t2 + t3;
  out.third_user_active = t3 > 0;
  return out;
}

SumRateBound ldc_k_sym_sum_capacity(int nd, int ni, std::size_t k) {
  if (k == 0) throw InvalidArgument("ldc_k_sym_sum_capacity: k must be positive");
  if (nd < 0 || ni < 0) throw InvalidArgument("ldc_k_sym_sum_capacity: negative gain");
  SumRateBound out;
  if (nd == ni) {
    out.regime = nd == 0 ? SymRegime::Zero : SymRegime::Mac;
    out.value = nd;
    out.terms = {{"mac", nd}};
    return out;
  }
  const std::int64_t km1 = static_cast<std::int64_t>(k) - 1;
  const std::int64_t head = km1 * std::max(nd, ni);
  const std::int64_t tail = std::max(0, nd - ni);
  out.regime = nd == 0 ? SymRegime::BroadcastDegenerate : SymRegime::General;
  out.terms = {{"first_k_minus_1", head}, {"last_user", tail}};
  out.value = head + tail;
  return out;
}

Rational normalized_sym_capacity(int nd, int ni, std::size_t k) {
  if (nd <= 0) throw InvalidArgument("normalized_sym_capacity: nd must be positive");
  const Rational alpha(ni, nd);
  const Rational one(1);
  const Rational kk(static_cast<std::int64_t>(k));
  if (alpha == one) return one;
  const Rational top = alpha < one ? one : alpha;
  return kk * top - alpha;
}

}  // namespace cifc::ldc
