#include "cifc/gaussian/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cifc/error.hpp"

namespace cifc::gaussian {

namespace {

double sq(double x) { return x * x; }

}  // namespace

double outer_sum_general(const GaussianSymChannel& ch) {
  const double km1 = static_cast<double>(ch.k - 1);
  const double km2 = static_cast<double>(ch.k - 2);
  const double hi_abs = std::abs(ch.hi);
  const double cross = std::norm(std::complex<double>(ch.hd, 0) - ch.hi);
  return std::log2(1.0 + sq(ch.hd + km1 * hi_abs)) + km2 + km2 * std::log2(1.0 + cross / 2.0) +
         std::log2(1.0 + ch.snr() / (1.0 + km1 * ch.inr()));
}

double outer_sum_mac(const GaussianSymChannel& ch) {
  const double k = static_cast<double>(ch.k);
  return std::log2(1.0 + k * k * ch.snr());
}

double outer_sum(const GaussianSymChannel& ch) { return ch.is_mac() ? outer_sum_mac(ch) : outer_sum_general(ch); }

double beamforming_inner(const GaussianSymChannel& ch) {
  return std::log2(1.0 + sq(ch.hd + static_cast<double>(ch.k - 1) * std::abs(ch.hi)));
}

double analytic_gap_bound(std::size_t k) {
  if (k < 3) throw InvalidArgument("analytic_gap_bound: k must be at least 3");
  if (k == 3) return 6.0;
  const double km2 = static_cast<double>(k - 2);
  return km2 * std::log2(km2) + std::log2(2.0 * std::exp(2.0));
}

double chain_inner_lower(const GaussianSymChannel& ch) {
  const ClosedFormChoice cf = closed_form_choice(ch);
  if (cf.branch == ClosedFormBranch::Weak || ch.k < 3) return dpc_rates(ch, cf.params).sum();
  const double k = static_cast<double>(ch.k);
  const double hi_abs = std::abs(ch.hi);
  const double cross = std::norm(std::complex<double>(ch.hd, 0) - ch.hi);
  const double last = std::log2(1.0 + ch.snr() / (1.0 + (k - 1) * ch.inr()));
  if (ch.k == 3) {
    return std::log2(1.0 + sq(ch.hd + hi_abs / 2.0) / 2.0) + std::log2(1.0 + cross / 2.0) + last;
  }
  const double first = std::log2(1.0 + sq(ch.hd + hi_abs * std::sqrt((k - 3) * (k - 2))) / 2.0);
  const double middle = (k - 2) * std::log2(1.0 + cross * (k - 1) / ((k - 2) * (k + 1)));
  return first + middle + last;
}

GapCertificate additive_gap_certificate(const GaussianSymChannel& ch) {
  if (ch.k < 3) throw InvalidArgument("additive_gap_certificate: k must be at least 3");
  const ClosedFormChoice cf = closed_form_choice(ch);
  GapCertificate c;
  c.inner = dpc_rates(ch, cf.params).sum();
  c.outer = outer_sum(ch);
  c.additive_gap = c.outer - c.inner;
  c.analytic_gap_bound = analytic_gap_bound(ch.k);
  const double bf = beamforming_inner(ch);
  c.multiplicative_ratio = bf > 0 ? c.outer / bf : std::numeric_limits<double>::quiet_NaN();
  c.branch = cf.branch;
  c.mac_branch = ch.is_mac();
  c.outer_general = outer_sum_general(ch);
  c.outer_mac = outer_sum_mac(ch);
  c.chain_gap = c.outer - chain_inner_lower(ch);
  if (c.additive_gap > c.analytic_gap_bound + kTol.gap_slack || c.inner > c.outer + kTol.compare) {
    std::ostringstream os;
    os.precision(17);
    os << "additive gap " << c.additive_gap << " (inner " << c.inner << ", outer " << c.outer
       << ") violates the bound " << c.analytic_gap_bound << " at hd=" << ch.hd << " hi=" << ch.hi
       << " K=" << ch.k;
    throw GapExceeded(os.str());
  }
  return c;
}

}  // namespace cifc::gaussian
