#include "cifc/gaussian/channel.hpp"

#include <cmath>
#include <limits>

#include "cifc/error.hpp"

namespace cifc::gaussian {

GaussianSymChannel::GaussianSymChannel(double hd_, std::complex<double> hi_, std::size_t k_)
    : hd(hd_), hi(hi_), k(k_) {
  if (!std::isfinite(hd) || !std::isfinite(hi.real()) || !std::isfinite(hi.imag())) {
    throw InvalidArgument("GaussianSymChannel: gains must be finite");
  }
  if (hd < 0) throw InvalidArgument("GaussianSymChannel: hd must be non-negative");
  if (k < 2) throw InvalidArgument("GaussianSymChannel: k must be at least 2");
}

GaussianSymChannel GaussianSymChannel::from_snr_db(double snr_db, double alpha, std::size_t k) {
  const double snr = std::pow(10.0, snr_db / 10.0);
  return {std::sqrt(snr), std::complex<double>(std::pow(snr, alpha / 2.0), 0.0), k};
}

double GaussianSymChannel::alpha() const noexcept {
  if (snr() == 0) return std::numeric_limits<double>::quiet_NaN();
  return std::log1p(inr()) / std::log1p(snr());
}

}  // namespace cifc::gaussian
