#include "cifc/gdof/gdof.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "cifc/error.hpp"
#include "cifc/gaussian/bounds.hpp"
#include "cifc/gaussian/dpc.hpp"

namespace cifc::gdof {

namespace {

void check(std::size_t k) {
  if (k < 2) throw InvalidArgument("gdof: k must be at least 2");
}

void check(double alpha, std::size_t k) {
  check(k);
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw InvalidArgument("gdof: alpha must be finite and non-negative");
}

void check(Rational alpha, std::size_t k) {
  check(k);
  if (alpha < Rational(0)) throw InvalidArgument("gdof: alpha must be non-negative");
}

template <class T>
T max_one(T a) {
  return a < T(1) ? T(1) : a;
}

template <class T>
T w_impl(T a) {
  // Segment boundaries 1/2, 2/3, 1, 2.
  if (!(T(1) < a * T(2))) return T(2) * (T(1) - a);
  if (!(T(2) < a * T(3))) return T(2) * a;
  if (!(T(1) < a)) return T(2) - a;
  if (!(T(2) < a)) return a;
  return T(2);
}

template <class T>
T cms_impl(T a, std::size_t k, bool disc) {
  if (disc && a == T(1)) return T(1);
  const T kk(static_cast<std::int64_t>(k));
  return kk * max_one(a) - a;
}

template <class T>
T bc_impl(T a, std::size_t k, bool disc) {
  if (disc && a == T(1)) return T(1);
  return T(static_cast<std::int64_t>(k)) * max_one(a);
}

template <class T>
T ifc_impl(T a, std::size_t k, bool disc) {
  if (disc && a == T(1)) return T(1);
  return T(static_cast<std::int64_t>(k)) * w_impl(a) / T(2);
}

}  // namespace

std::string_view model_name(Model m) {
  switch (m) {
    case Model::Cms: return "CMS";
    case Model::Ifc: return "IFC";
    case Model::Bc: return "BC";
  }
  return "?";
}

Model parse_model(std::string_view s) {
  std::string low(s);
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "cms") return Model::Cms;
  if (low == "ifc") return Model::Ifc;
  if (low == "bc") return Model::Bc;
  throw InvalidArgument("unknown gdof model '" + std::string(s) + "'");
}

double w_curve(double alpha) {
  check(alpha, 2);
  return w_impl(alpha);
}
Rational w_curve(Rational alpha) {
  check(alpha, 2);
  return w_impl(alpha);
}

double gdof_cms(double alpha, std::size_t k, bool discontinuity) {
  check(alpha, k);
  return cms_impl(alpha, k, discontinuity);
}
double gdof_bc(double alpha, std::size_t k, bool discontinuity) {
  check(alpha, k);
  return bc_impl(alpha, k, discontinuity);
}
double gdof_ifc(double alpha, std::size_t k, bool discontinuity) {
  check(alpha, k);
  return ifc_impl(alpha, k, discontinuity);
}
Rational gdof_cms(Rational alpha, std::size_t k, bool discontinuity) {
  check(alpha, k);
  return cms_impl(alpha, k, discontinuity);
}
Rational gdof_bc(Rational alpha, std::size_t k, bool discontinuity) {
  check(alpha, k);
  return bc_impl(alpha, k, discontinuity);
}
Rational gdof_ifc(Rational alpha, std::size_t k, bool discontinuity) {
  check(alpha, k);
  return ifc_impl(alpha, k, discontinuity);
}

double gdof(Model m, double alpha, std::size_t k, bool discontinuity) {
  switch (m) {
    case Model::Cms: return gdof_cms(alpha, k, discontinuity);
    case Model::Ifc: return gdof_ifc(alpha, k, discontinuity);
    case Model::Bc: return gdof_bc(alpha, k, discontinuity);
  }
  throw InvalidArgument("gdof: bad model");
}

GdofCurve curve_sweep(Model m, std::size_t k, const std::vector<double>& alphas, bool normalized) {
  check(k);
  if (alphas.empty()) throw InvalidArgument("curve_sweep: empty alpha grid");
  GdofCurve c{m, k, normalized, {}};
  const double scale = normalized ? static_cast<double>(k) : 1.0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    if (i > 0 && !(a > alphas[i - 1])) throw InvalidArgument("curve_sweep: alpha grid must be strictly increasing");
    GdofSample s{a, gdof(m, a, k, false) / scale, std::nullopt};
    if (a == 1.0) s.d_at_alpha1 = gdof(m, a, k, true) / scale;
    c.samples.push_back(s);
  }
  return c;
}

SlopeEstimate empirical_gdof(std::size_t k, double alpha, const std::vector<double>& snr_db) {
  check(alpha, k);
  if (std::abs(alpha - 1.0) < 0.1) throw InvalidArgument("empirical_gdof: alpha must satisfy |alpha - 1| >= 0.1");
  if (snr_db.size() < 2) throw InvalidArgument("empirical_gdof: at least two SNR points are needed");
  std::vector<double> x, yi, yo;
  for (double db : snr_db) {
    const auto ch = gaussian::GaussianSymChannel::from_snr_db(db, alpha, k);
    x.push_back(std::log2(1.0 + ch.snr()));
    yi.push_back(gaussian::dpc_rates(ch, gaussian::closed_form_params(ch)).sum());
    yo.push_back(gaussian::outer_sum(ch));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0;
  for (double v : x) mx += v / n;
  double sxx = 0;
  for (double v : x) sxx += (v - mx) * (v - mx);
  if (!(sxx > 0)) throw InvalidArgument("empirical_gdof: SNR points must be distinct");
  auto slope = [&](const std::vector<double>& y) {
    double my = 0;
    for (double v : y) my += v / n;
    double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my);
    return sxy / sxx;
  };
  return {slope(yi), slope(yo)};
}

}  // namespace cifc::gdof
