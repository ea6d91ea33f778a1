#include "cifc/gaussian/dpc.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "cifc/error.hpp"

namespace cifc::gaussian {

namespace {

using cd = std::complex<double>;

void check_shape(const GaussianSymChannel& ch, const DpcParams& p) {
  if (p.alpha.size() != ch.k || p.gamma.size() != ch.k) {
    throw DimensionMismatch("DpcParams: alpha and gamma need one entry per user");
  }
  if (p.gamma[0] != cd(0, 0)) throw InvalidArgument("DpcParams: gamma[0] must be zero");
}

cd unit_phase(cd z) { return z == cd(0, 0) ? cd(1, 0) : z / std::abs(z); }

}  // namespace

DpcParams DpcParams::zeros(const GaussianSymChannel& ch) {
  DpcParams p;
  p.alpha.assign(ch.k, cd(0, 0));
  p.alpha[0] = unit_phase(ch.hi);
  p.gamma.assign(ch.k, cd(0, 0));
  return p;
}

double RateVector::sum() const { return std::accumulate(rates.begin(), rates.end(), 0.0); }

std::vector<double> antenna_powers(const GaussianSymChannel& ch, const DpcParams& p) {
  check_shape(ch, p);
  const std::size_t k = ch.k;
  const double b2 = std::norm(p.beta);
  std::vector<double> pw(k);
  pw[0] = 1.0;  // alpha_1 has unit modulus
  for (std::size_t j = 1; j + 1 < k; ++j) pw[j] = std::norm(p.gamma[j]) + b2 + std::norm(p.alpha[j]);
  pw[k - 1] = std::norm(p.gamma[k - 1]) + static_cast<double>(k - 2) * b2 + std::norm(p.alpha[k - 1]);
  for (std::size_t j = 0; j < k; ++j) {
    if (pw[j] > 1.0 + kTol.power_slack) {
      throw PowerConstraintViolated("transmitter " + std::to_string(j + 1) + " power " + std::to_string(pw[j]) +
                                    " exceeds 1");
    }
  }
  return pw;
}

RateVector dpc_rates(const GaussianSymChannel& ch, const DpcParams& p) {
  antenna_powers(ch, p);
  const std::size_t k = ch.k;
  const double hi_abs = std::abs(ch.hi);
  const double inr = ch.inr();
  const double cross = std::norm(cd(ch.hd, 0) - ch.hi);

  // tail[j] = sum_{k >= j} |gamma_k|^2
  std::vector<double> tail(k + 1, 0.0);
  for (std::size_t j = k; j-- > 0;) tail[j] = tail[j + 1] + std::norm(p.gamma[j]);

  RateVector r;
  r.rates.assign(k, 0.0);
  cd beam(0, 0);
  for (std::size_t j = 1; j < k; ++j) beam += p.alpha[j];
  r.rates[0] = std::log2(1.0 + std::norm(ch.hd + hi_abs * beam) / (1.0 + inr * tail[1]));
  for (std::size_t j = 1; j + 1 < k; ++j) {
    const double sig = cross * std::norm(p.beta) + ch.snr() * std::norm(p.gamma[j]);
    r.rates[j] = std::log2(1.0 + sig / (1.0 + inr * tail[j + 1]));
  }
  r.rates[k - 1] = std::log2(1.0 + ch.snr() * std::norm(p.gamma[k - 1]));
  return r;
}

Eigen::MatrixXcd channel_matrix(const GaussianSymChannel& ch) {
  const auto k = static_cast<Eigen::Index>(ch.k);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Constant(k, k, ch.hi);
  for (Eigen::Index i = 0; i < k; ++i) h(i, i) = ch.hd;
  return h;
}

std::vector<Eigen::MatrixXcd> induced_covariances(const GaussianSymChannel& ch, const DpcParams& p) {
  check_shape(ch, p);
  const auto k = static_cast<Eigen::Index>(ch.k);
  std::vector<Eigen::MatrixXcd> s;
  Eigen::VectorXcd a(k);
  a(0) = unit_phase(ch.hi);
  for (Eigen::Index j = 1; j < k; ++j) a(j) = p.alpha[static_cast<std::size_t>(j)];
  s.push_back(a * a.adjoint());
  for (Eigen::Index j = 1; j < k; ++j) {
    Eigen::MatrixXcd sj = Eigen::MatrixXcd::Zero(k, k);
    sj(j, j) = std::norm(p.gamma[static_cast<std::size_t>(j)]);
    if (j + 1 < k) {
      Eigen::VectorXcd zf = Eigen::VectorXcd::Zero(k);
      zf(j) = 1;
      zf(k - 1) = -1;
      sj += std::norm(p.beta) * zf * zf.adjoint();
    }
    s.push_back(sj);
  }
  return s;
}

RateVector mimo_bc_rates(const Eigen::MatrixXcd& h, const std::vector<Eigen::MatrixXcd>& sigma) {
  const auto k = static_cast<std::size_t>(h.rows());
  if (sigma.size() != k) throw DimensionMismatch("mimo_bc_rates: one covariance per receiver expected");
  RateVector r;
  r.rates.assign(k, 0.0);
  for (std::size_t l = 0; l < k; ++l) {
    const Eigen::RowVectorXcd hl = h.row(static_cast<Eigen::Index>(l));
    auto power = [&](std::size_t u) { return (hl * sigma[u] * hl.adjoint())(0, 0).real(); };
    double interference = 0;
    for (std::size_t u = l + 1; u < k; ++u) interference += power(u);
    r.rates[l] = std::log2(1.0 + power(l) / (1.0 + interference));
  }
  return r;
}

DpcParams strong_branch_params(const GaussianSymChannel& ch) {
  const std::size_t k = ch.k;
  const double x = ch.inr();
  DpcParams p = DpcParams::zeros(ch);
  const double g2 = 1.0 / (1.0 + static_cast<double>(k - 1) * x);
  p.gamma[k - 1] = std::sqrt(g2);
  if (k == 2) {
    p.alpha[1] = std::sqrt(1.0 - g2);
    return p;
  }
  double b2 = 0;
  double aK2 = 0;
  if (k == 3) {
    b2 = (1.0 + 3.0 * x) / (2.0 * (1.0 + 2.0 * x));
    // Below |hi|^2 = 1 the K = 3 choice overdraws transmitter K; cap beta.
    b2 = std::min(b2, 1.0 - g2);
    aK2 = std::max(0.0, 1.0 - b2 - g2);
  } else {
    b2 = (1.0 - g2) / static_cast<double>(k - 2);
  }
  p.beta = std::sqrt(b2);
  p.alpha[k - 1] = std::sqrt(aK2);
  for (std::size_t j = 1; j + 1 < k; ++j) p.alpha[j] = std::sqrt(std::max(0.0, 1.0 - b2));
  return p;
}

DpcParams weak_branch_params(const GaussianSymChannel& ch) {
  DpcParams p = DpcParams::zeros(ch);
  for (std::size_t j = 1; j < ch.k; ++j) p.gamma[j] = 1.0;
  return p;
}

ClosedFormChoice closed_form_choice(const GaussianSymChannel& ch) {
  const double x = ch.inr();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  DpcParams weak = weak_branch_params(ch);
  const double weak_sum = dpc_rates(ch, weak).sum();
  if (x < 1.0) return {std::move(weak), ClosedFormBranch::Weak, nan, weak_sum};
  DpcParams strong = strong_branch_params(ch);
  const double strong_sum = dpc_rates(ch, strong).sum();
  if (x == 1.0 && weak_sum > strong_sum) return {std::move(weak), ClosedFormBranch::Weak, strong_sum, weak_sum};
  return {std::move(strong), ClosedFormBranch::Strong, strong_sum, weak_sum};
}

DpcParams closed_form_params(const GaussianSymChannel& ch) { return closed_form_choice(ch).params; }

}  // namespace cifc::gaussian
