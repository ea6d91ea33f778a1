#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cifc/error.hpp"
#include "cifc/gaussian/bounds.hpp"
#include "cifc/gaussian/channel.hpp"
#include "cifc/gaussian/dpc.hpp"
#include "cifc/gaussian/mutual_info.hpp"
#include "cifc/gaussian/optimize.hpp"

using namespace cifc::gaussian;
using cd = std::complex<double>;

namespace {

long double log2l_(long double x) { return std::log2(x); }

DpcParams random_feasible(const GaussianSymChannel& ch, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
  DpcParams p = DpcParams::zeros(ch);
  const std::size_t k = ch.k;
  const double bmax = k >= 3 ? 1.0 / std::sqrt(static_cast<double>(k - 2)) : 0.0;
  const double b = u(rng) * bmax;
  p.beta = std::polar(b, 0.0);
  for (std::size_t j = 1; j < k; ++j) {
    const double used = j + 1 < k ? b * b : static_cast<double>(k - 2) * b * b;
    const double left = std::max(0.0, 1.0 - used);
    const double g2 = u(rng) * left;
    const double a2 = u(rng) * (left - g2);
    p.gamma[j] = std::polar(std::sqrt(g2), ph(rng));
    p.alpha[j] = std::polar(std::sqrt(a2), 0.0);
  }
  return p;
}

}  // namespace

TEST_CASE("outer_sum examples") {
  CHECK(outer_sum(GaussianSymChannel(0, 0, 3)) == 0.0);
  CHECK(outer_sum(GaussianSymChannel(1, 1, 3)) == doctest::Approx(std::log2(10.0)).epsilon(1e-15));

  const GaussianSymChannel ch(10, 1, 3);
  CHECK_FALSE(ch.is_mac());
  const long double t1 = log2l_(1.0L + 12.0L * 12.0L);
  const long double t3 = log2l_(1.0L + 81.0L / 2.0L);
  const long double t4 = log2l_(1.0L + 100.0L / 3.0L);
  CHECK(static_cast<double>(t1) == doctest::Approx(7.1799).epsilon(1e-4));
  CHECK(outer_sum(ch) == doctest::Approx(static_cast<double>(t1 + 1.0L + t3 + t4)).epsilon(1e-14));
  CHECK(outer_sum(ch) == doctest::Approx(18.6565).epsilon(1e-5));
}

TEST_CASE("MAC branch is chosen by exact equality only") {
  const double s = std::sqrt(10.0);
  const GaussianSymChannel mac(s, s, 4);
  CHECK(mac.is_mac());
  CHECK(outer_sum(mac) == doctest::Approx(std::log2(1.0 + 16.0 * 10.0)));
  const GaussianSymChannel near(s, std::nextafter(s, 10.0), 4);
  CHECK_FALSE(near.is_mac());
  CHECK(outer_sum(near) > outer_sum_mac(near) + 1.0);
  const GaussianSymChannel rotated(s, std::polar(s, 1e-3), 4);
  CHECK_FALSE(rotated.is_mac());
  const GapCertificate c = additive_gap_certificate(mac);
  CHECK(c.mac_branch);
  CHECK(c.additive_gap <= analytic_gap_bound(4));
  CHECK(c.outer_general > c.outer_mac);
}

TEST_CASE("beamforming_inner examples") {
  CHECK(beamforming_inner(GaussianSymChannel(1, 0, 5)) == doctest::Approx(1.0));
  CHECK(beamforming_inner(GaussianSymChannel(3, 2, 3)) == doctest::Approx(std::log2(50.0)));
  CHECK(beamforming_inner(GaussianSymChannel(3, 2, 3)) == doctest::Approx(5.644).epsilon(1e-3));
}

TEST_CASE("analytic_gap_bound values") {
  CHECK(analytic_gap_bound(3) == 6.0);
  CHECK(analytic_gap_bound(4) == doctest::Approx(2.0 + std::log2(2.0) + 2.0 / std::log(2.0)));
  CHECK(analytic_gap_bound(4) == doctest::Approx(5.885).epsilon(1e-3));
  CHECK(analytic_gap_bound(5) == doctest::Approx(8.640).epsilon(1e-3));
  CHECK_THROWS_AS(analytic_gap_bound(2), cifc::InvalidArgument);
}

TEST_CASE("dpc_rates examples") {
  const GaussianSymChannel ch(5, cd(1.5, 0.7), 4);
  DpcParams p = DpcParams::zeros(ch);
  p.gamma[3] = 1.0;
  const RateVector r = dpc_rates(ch, p);
  CHECK(r.rates[3] == doctest::Approx(std::log2(1.0 + 25.0)));
  CHECK(r.rates[1] == 0.0);
  CHECK(r.rates[2] == 0.0);
  CHECK(r.rates[0] == doctest::Approx(std::log2(1.0 + 25.0 / (1.0 + ch.inr()))));

  const DpcParams weak = weak_branch_params(ch);
  const RateVector w = dpc_rates(ch, weak);
  for (std::size_t l = 0; l < 4; ++l) {
    const double expected = std::log2(1.0 + 25.0 / (1.0 + static_cast<double>(3 - l) * ch.inr()));
    CHECK(w.rates[l] == doctest::Approx(expected));
  }
  CHECK(w.sum() == doctest::Approx(w.rates[0] + w.rates[1] + w.rates[2] + w.rates[3]));

  const GaussianSymChannel dark(0, 2, 3);
  DpcParams d = DpcParams::zeros(dark);
  d.gamma[2] = 1.0;
  CHECK(dpc_rates(dark, d).rates[2] == 0.0);
}

TEST_CASE("dpc_rates rejects overdrawn transmitters") {
  const GaussianSymChannel ch(2, 1, 3);
  DpcParams p = DpcParams::zeros(ch);
  p.gamma[1] = 0.8;
  p.alpha[1] = 0.7;
  CHECK_THROWS_AS(dpc_rates(ch, p), cifc::PowerConstraintViolated);
  p.alpha[1] = 0.6;
  CHECK_NOTHROW(dpc_rates(ch, p));
  DpcParams q = DpcParams::zeros(ch);
  q.beta = 0.8;
  q.gamma[2] = 0.7;
  CHECK_THROWS_AS(dpc_rates(ch, q), cifc::PowerConstraintViolated);
}

TEST_CASE("closed-form parameters") {
  {
    const GaussianSymChannel ch(10, 2, 4);
    const DpcParams p = closed_form_params(ch);
    CHECK(std::norm(p.gamma[3]) == doctest::Approx(1.0 / 13.0));
    CHECK(std::norm(p.beta) == doctest::Approx(6.0 / 13.0));
    CHECK(std::norm(p.alpha[3]) == 0.0);
    CHECK(std::norm(p.alpha[1]) == doctest::Approx(7.0 / 13.0));
    CHECK(p.gamma[1] == cd(0, 0));
  }
  {
    // |hi|^2 = 1 sits on the boundary; both branches are evaluated.
    const GaussianSymChannel ch(10, 1, 3);
    const DpcParams p = strong_branch_params(ch);
    CHECK(std::norm(p.alpha[2]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::norm(p.beta) == doctest::Approx(2.0 / 3.0));
    const ClosedFormChoice c = closed_form_choice(ch);
    CHECK(dpc_rates(ch, c.params).sum() == std::max(c.strong_sum, c.weak_sum));
  }
  {
    const GaussianSymChannel ch(10, 3, 3);
    const DpcParams p = closed_form_params(ch);
    const double x = 9.0;
    CHECK(std::norm(p.alpha[2]) == doctest::Approx((x - 1.0) / (2.0 * (1.0 + 2.0 * x))));
    CHECK(std::norm(p.beta) == doctest::Approx((1.0 + 3.0 * x) / (2.0 * (1.0 + 2.0 * x))));
  }
  {
    const GaussianSymChannel ch(10, 0.5, 5);
    const ClosedFormChoice c = closed_form_choice(ch);
    CHECK(c.branch == ClosedFormBranch::Weak);
    CHECK(c.params.beta == cd(0, 0));
    for (std::size_t j = 1; j < 5; ++j) CHECK(c.params.gamma[j] == cd(1, 0));
  }
  // Power feasibility on a sweep, with the tight constraints met.
  for (std::size_t k = 2; k <= 6; ++k) {
    for (double db = 0; db <= 60; db += 10) {
      for (double a = 0; a <= 3.0; a += 0.25) {
        const auto ch = GaussianSymChannel::from_snr_db(db, a, k);
        const DpcParams p = closed_form_params(ch);
        const auto pw = antenna_powers(ch, p);
        for (double v : pw) CHECK(v <= 1.0 + kTol.power_slack);
      }
    }
  }
}

TEST_CASE("dpc_rates agree with the MIMO broadcast evaluation of the induced covariances") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::uniform_real_distribution<double> ph(-3.1, 3.1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    const GaussianSymChannel ch(u(rng), std::polar(u(rng), trial % 3 == 0 ? 0.0 : ph(rng)), k);
    const DpcParams p = random_feasible(ch, rng);
    const RateVector direct = dpc_rates(ch, p);
    const RateVector bc = mimo_bc_rates(channel_matrix(ch), induced_covariances(ch, p));
    for (std::size_t l = 0; l < k; ++l) {
      CHECK_MESSAGE(direct.rates[l] == doctest::Approx(bc.rates[l]).epsilon(1e-10), "trial " << trial << " user " << l);
    }
  }
}

TEST_CASE("induced covariances respect the message-sharing zero pattern") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    const GaussianSymChannel ch(3, std::polar(2.0, 0.3 * trial), k);
    const DpcParams p = random_feasible(ch, rng);
    const auto sigma = induced_covariances(ch, p);
    REQUIRE(sigma.size() == k);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    for (std::size_t l = 0; l < k; ++l) {
      const auto& s = sigma[l];
      CHECK((s - s.adjoint()).norm() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
      for (std::size_t r = 0; r < l; ++r) {
        CHECK(s.row(static_cast<Eigen::Index>(r)).norm() == 0.0);
        CHECK(s.col(static_cast<Eigen::Index>(r)).norm() == 0.0);
      }
      diag += s.diagonal().real();
    }
    for (Eigen::Index i = 0; i < diag.size(); ++i) CHECK(diag(i) <= 1.0 + 1e-12);
  }
}

TEST_CASE("additive and multiplicative certificates hold on the grid") {
  for (std::size_t k = 3; k <= 6; ++k) {
    for (double db = 0; db <= 60; db += 10) {
      for (int i = 0; i <= 12; ++i) {
        const auto ch = GaussianSymChannel::from_snr_db(db, 0.25 * i, k);
        const GapCertificate c = additive_gap_certificate(ch);
        CHECK(c.inner <= c.outer + kTol.compare);
        CHECK(c.additive_gap == doctest::Approx(c.outer - c.inner));
        if (!std::isnan(c.multiplicative_ratio)) CHECK(c.multiplicative_ratio <= static_cast<double>(k) + 1e-9);
      }
    }
  }
  const GapCertificate zero = additive_gap_certificate(GaussianSymChannel(0, 0, 3));
  CHECK(zero.inner == 0.0);
  CHECK(zero.outer == 0.0);
  CHECK(std::isnan(zero.multiplicative_ratio));
  CHECK_THROWS_AS(additive_gap_certificate(GaussianSymChannel(1, 1, 2)), cifc::InvalidArgument);
}

TEST_CASE("chain inner lower bound stays below the closed-form rate and its gap tends to 6") {
  for (double a = 0; a <= 3.0; a += 0.1) {
    const auto ch = GaussianSymChannel::from_snr_db(50, a, 3);
    CHECK(chain_inner_lower(ch) <= dpc_rates(ch, closed_form_params(ch)).sum() + 1e-9);
  }
  const auto far = GaussianSymChannel::from_snr_db(50, 3.0, 3);
  CHECK(additive_gap_certificate(far).chain_gap == doctest::Approx(6.0).epsilon(1e-3));
}

TEST_CASE("mutual_info_gaussian identities") {
  Eigen::MatrixXcd ind = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(mutual_info_gaussian(ind, {0}, {1}, {}) == doctest::Approx(0.0));

  // X, Z unit power; I(X; X + Z) = 1 bit.
  Eigen::MatrixXcd xy(2, 2);
  xy << 1.0, 1.0, 1.0, 2.0;
  CHECK(mutual_info_gaussian(xy, {0}, {1}, {}) == doctest::Approx(1.0));
  CHECK(mutual_info_gaussian(xy, {1}, {0}, {}) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXcd a(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) a(i, j) = cd(g(rng), g(rng));
    }
    const Eigen::MatrixXcd cov = a * a.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(4, 4);
    const double lhs = mutual_info_gaussian(cov, {0}, {1, 2}, {});
    const double rhs = mutual_info_gaussian(cov, {0}, {1}, {}) + mutual_info_gaussian(cov, {0}, {2}, {1});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    CHECK(mutual_info_gaussian(cov, {0}, {2}, {1, 3}) == doctest::Approx(mutual_info_gaussian(cov, {0}, {2}, {3, 1})));
    CHECK(mutual_info_gaussian(cov, {0, 3}, {2}, {1}) == doctest::Approx(mutual_info_gaussian(cov, {2}, {0, 3}, {1})));
  }

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(mutual_info_gaussian(bad, {0}, {1}, {}), cifc::NonPsdInput);
}

TEST_CASE("chain bound matches the mutual-information terms evaluated directly") {
  // Joint vector (X1..X3, Y1..Y3); the bound is
  // I(X;Y1) + I(X2,X3;Y2|X1,Y1) + I(X3;Y3|X1,X2,Y1,Y2).
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const GaussianSymChannel ch(1.0 + std::abs(g(rng)) * 3, cd(g(rng), g(rng)), 3);
    Eigen::MatrixXcd a(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) a(i, j) = cd(g(rng), g(rng));
    }
    Eigen::MatrixXcd q = a * a.adjoint();
    const Eigen::VectorXcd d = q.diagonal().cwiseSqrt().cwiseInverse();
    q = (d.asDiagonal() * q * d.asDiagonal()).eval();
    q = (0.5 * (q + q.adjoint())).eval();
    NoiseCorrelation rho{0.3 * (trial % 3 - 1), 0.2, -0.1 * (trial % 4)};
    const Eigen::MatrixXcd n = rho.matrix();
    const Eigen::MatrixXcd joint = joint_input_output_cov(q, channel_matrix(ch), n);
    const double direct = mutual_info_gaussian(joint, {0, 1, 2}, {3}, {}) +
                          mutual_info_gaussian(joint, {1, 2}, {4}, {0, 3}) +
                          mutual_info_gaussian(joint, {2}, {5}, {0, 1, 3, 4});
    CHECK(chain_sum_bound(ch, q, n) == doctest::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("chain bound at independent noise and the certified maximum") {
  const auto ch = GaussianSymChannel::from_snr_db(20, 1.5, 3);
  const Eigen::MatrixXcd n = Eigen::MatrixXcd::Identity(3, 3);
  // DPC-induced input gives a chain value at least the DPC sum rate.
  const DpcParams p = closed_form_params(ch);
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(3, 3);
  for (const auto& s : induced_covariances(ch, p)) q += s;
  CHECK(chain_sum_bound(ch, q, n) >= dpc_rates(ch, p).sum() - 1e-9);

  const ChainMaximum m = maximize_chain_bound(ch, n, q, 2000);
  CHECK(m.value >= chain_sum_bound(ch, q, n) - 1e-9);
  CHECK(m.certified >= m.value - 1e-9);
  CHECK(m.certified - m.value < 1e-3);
  // Random feasible inputs never beat the certificate.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::MatrixXcd a(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) a(i, j) = cd(g(rng), g(rng));
    }
    Eigen::MatrixXcd r = a * a.adjoint();
    const double scale = r.diagonal().real().maxCoeff();
    r /= scale;
    CHECK(chain_sum_bound(ch, r, n) <= m.certified + 1e-9);
  }
  CHECK(m.evaluations <= 2000);
}

TEST_CASE("optimize_inner") {
  const auto ch = GaussianSymChannel::from_snr_db(20, 2.0, 3);
  const double cf = dpc_rates(ch, closed_form_params(ch)).sum();
  const InnerOptResult one = optimize_inner(ch, 1, 4);
  CHECK(one.evaluations == 0);
  CHECK(one.sum_rate == one.best_start_value);
  CHECK(one.sum_rate >= cf - 1e-9);
  const InnerOptResult full = optimize_inner(ch, 10000, 4);
  CHECK(full.sum_rate >= one.sum_rate);
  CHECK(full.evaluations <= 9999);
  CHECK(dpc_rates(ch, full.params).sum() == doctest::Approx(full.sum_rate));
  CHECK(outer_sum(ch) - full.sum_rate < 6.0);
  const InnerOptResult again = optimize_inner(ch, 10000, 4);
  CHECK(again.sum_rate == full.sum_rate);
  CHECK_THROWS_AS(optimize_inner(ch, 0, 4), cifc::InvalidArgument);

  for (std::size_t k = 2; k <= 5; ++k) {
    for (double a : {0.0, 0.5, 1.0, 1.5, 2.5}) {
      const auto c = GaussianSymChannel::from_snr_db(30, a, k);
      const InnerOptResult r = optimize_inner(c, 3000, 1);
      CHECK(r.sum_rate >= dpc_rates(c, closed_form_params(c)).sum() - 1e-9);
      for (double v : antenna_powers(c, r.params)) CHECK(v <= 1.0 + kTol.power_slack);
    }
  }
}

TEST_CASE("optimize_outer") {
  CHECK_THROWS_AS(optimize_outer(GaussianSymChannel(3, 1, 4), 100, 1), cifc::InvalidArgument);
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    const auto ch = GaussianSymChannel::from_snr_db(20, a, 3);
    const OuterOptResult o = optimize_outer(ch, 3000, 2);
    CHECK(o.value <= outer_sum(ch) + 1e-9);
    CHECK(o.value <= o.chain_value);
    CHECK(o.chain_value <= o.independent_noise_value);
    CHECK(o.evaluations <= 3000);
    const InnerOptResult in = optimize_inner(ch, 3000, 2);
    CHECK(in.sum_rate <= o.value + 1e-9);

    // The rho = 0 value matches a direct maximization at independent noise.
    const ChainMaximum direct =
        maximize_chain_bound(ch, Eigen::MatrixXcd::Identity(3, 3), Eigen::MatrixXcd::Identity(3, 3), 3000);
    CHECK(o.independent_noise_value == doctest::Approx(direct.certified).epsilon(1e-4));
  }
  const auto ch = GaussianSymChannel::from_snr_db(20, 1.5, 3);
  CHECK(optimize_outer(ch, 2000, 9).value == optimize_outer(ch, 2000, 9).value);
}
