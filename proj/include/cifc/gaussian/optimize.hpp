#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>

#include "cifc/gaussian/channel.hpp"
#include "cifc/gaussian/dpc.hpp"

namespace cifc::gaussian {

struct InnerOptResult {
  DpcParams params;
  double sum_rate = 0;
  double best_start_value = 0;
  std::size_t evaluations = 0;  ///< ascent evaluations, starts excluded
};

/// Multi-start coordinate ascent of the DPC sum rate over (beta, gamma) with
/// the beamforming coefficients taking the remaining power. `budget` caps the
/// number of objective evaluations; the 16 starts are always evaluated and
/// budget 1 returns the best of them.
InnerOptResult optimize_inner(const GaussianSymChannel& ch, std::size_t budget, std::uint64_t seed);

/// Sum over u of I(X_u..X_K; Y_u | X_1, Y_1, ..., X_{u-1}, Y_{u-1}) in bits
/// for X ~ CN(0, q) and noise covariance `noise`.
double chain_sum_bound(const GaussianSymChannel& ch, const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& noise);

struct NoiseCorrelation {
  double r12 = 0, r13 = 0, r23 = 0;
  Eigen::MatrixXcd matrix() const;
};

struct ChainMaximum {
  double value = 0;      ///< best objective reached
  double certified = 0;  ///< upper bound on the maximum over all feasible q
  Eigen::MatrixXcd q;
  std::size_t evaluations = 0;
};

/// Maximizes chain_sum_bound over input covariances with unit per-antenna
/// power, starting from `q_start`. The certificate follows from concavity in
/// q and a dual bound on the linearized problem.
ChainMaximum maximize_chain_bound(const GaussianSymChannel& ch, const Eigen::MatrixXcd& noise,
                                  const Eigen::MatrixXcd& q_start, std::size_t max_evaluations);

struct OuterOptResult {
  double value = 0;                    ///< min(analytic, best certified chain bound)
  double chain_value = 0;              ///< best certified chain bound
  double independent_noise_value = 0;  ///< certified chain bound at rho = 0
  double analytic = 0;
  bool analytic_tighter = false;
  NoiseCorrelation rho;
  std::size_t evaluations = 0;
};

/// K = 3 only: minimizes the certified chain bound over real noise
/// correlations in [-0.99, 0.99]^3. `budget` caps chain-bound evaluations.
/// Throws InvalidArgument for other K.
OuterOptResult optimize_outer(const GaussianSymChannel& ch, std::size_t budget, std::uint64_t seed);

}  // namespace cifc::gaussian
