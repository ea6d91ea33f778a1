#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cifc/ldc/bounds.hpp"

namespace cifc::gdof {

using ldc::Rational;

enum class Model { Cms, Ifc, Bc };

std::string_view model_name(Model m);
/// Accepts "cms", "ifc", "bc" in any case. Throws InvalidArgument otherwise.
Model parse_model(std::string_view s);

/// Two-user sum W-curve.
double w_curve(double alpha);
Rational w_curve(Rational alpha);

/// Sum gDoF of the K-user models. At alpha == 1 the limit value is returned
/// unless `discontinuity` is set, in which case the value is 1.
double gdof_cms(double alpha, std::size_t k, bool discontinuity = false);
double gdof_bc(double alpha, std::size_t k, bool discontinuity = false);
double gdof_ifc(double alpha, std::size_t k, bool discontinuity = false);
Rational gdof_cms(Rational alpha, std::size_t k, bool discontinuity = false);
Rational gdof_bc(Rational alpha, std::size_t k, bool discontinuity = false);
Rational gdof_ifc(Rational alpha, std::size_t k, bool discontinuity = false);
double gdof(Model m, double alpha, std::size_t k, bool discontinuity = false);

struct GdofSample {
  double alpha = 0;
  double d = 0;                        ///< limit value at alpha == 1
  std::optional<double> d_at_alpha1;   ///< value at the discontinuity, only at alpha == 1
};

struct GdofCurve {
  Model model = Model::Cms;
  std::size_t k = 0;
  bool normalized = false;
  std::vector<GdofSample> samples;
};

/// Samples one model on a strictly increasing, non-negative grid. Values are
/// divided by K when `normalized` is set.
GdofCurve curve_sweep(Model m, std::size_t k, const std::vector<double>& alphas, bool normalized = false);

struct SlopeEstimate {
  double inner = 0;
  double outer = 0;
};

/// Least-squares slopes of the closed-form inner and the analytic outer sum
/// rate against log2(1 + SNR), with |hd|^2 = SNR and |hi|^2 = SNR^alpha.
/// Needs two distinct SNR points and |alpha - 1| >= 0.1.
SlopeEstimate empirical_gdof(std::size_t k, double alpha, const std::vector<double>& snr_db);

}  // namespace cifc::gdof
