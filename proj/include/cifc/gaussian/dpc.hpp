#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cifc/gaussian/channel.hpp"

namespace cifc::gaussian {

/// Coefficients of the DPC scheme. Index 0 is user 1.
///
/// alpha[j] scales U_1 at transmitter j. The rate formulas measure the
/// cognitive coefficients alpha[1..] relative to the phase of hi; alpha[0] is
/// always exp(i arg hi) and is not a free parameter.
/// beta is the zero-forcing amplitude, sent with + at transmitters 2..K-1 and
/// with - at transmitter K. gamma[j] (j >= 1) scales the private stream of
/// user j+1; gamma[0] must be zero.
struct DpcParams {
  std::vector<std::complex<double>> alpha;
  std::complex<double> beta{0, 0};
  std::vector<std::complex<double>> gamma;

  static DpcParams zeros(const GaussianSymChannel& ch);
};

struct RateVector {
  std::vector<double> rates;
  double sum() const;
};

/// Per-antenna powers. Throws PowerConstraintViolated when any exceeds 1.
std::vector<double> antenna_powers(const GaussianSymChannel& ch, const DpcParams& p);

/// Closed-form DPC rates with encoding order 1 -> K.
/// Throws DimensionMismatch on wrong sizes, PowerConstraintViolated when
/// infeasible.
RateVector dpc_rates(const GaussianSymChannel& ch, const DpcParams& p);

/// Row l is the channel vector seen by receiver l.
Eigen::MatrixXcd channel_matrix(const GaussianSymChannel& ch);

/// Per-user transmit covariances Sigma_1..Sigma_K induced by the parameters.
std::vector<Eigen::MatrixXcd> induced_covariances(const GaussianSymChannel& ch, const DpcParams& p);

/// Generic DPC rates of a MIMO broadcast channel with encoding order 1 -> K:
/// R_l = log2(1 + h_l S_l h_l^H / (1 + sum_{k>l} h_l S_k h_l^H)).
RateVector mimo_bc_rates(const Eigen::MatrixXcd& h, const std::vector<Eigen::MatrixXcd>& sigma);

enum class ClosedFormBranch {
  Strong,  ///< |hi|^2 >= 1: zero-forcing plus beamforming
  Weak,    ///< |hi|^2 < 1: successive private streams
};

struct ClosedFormChoice {
  DpcParams params;
  ClosedFormBranch branch;
  double strong_sum;  ///< NaN when the strong branch does not apply
  double weak_sum;
};

/// Parameters of the strong-interference choice; any |hi| is accepted.
DpcParams strong_branch_params(const GaussianSymChannel& ch);
/// beta = alpha_j = 0, gamma_j = 1.
DpcParams weak_branch_params(const GaussianSymChannel& ch);

/// Branch by |hi|^2 against 1; at |hi|^2 == 1 the better of the two.
ClosedFormChoice closed_form_choice(const GaussianSymChannel& ch);
DpcParams closed_form_params(const GaussianSymChannel& ch);

}  // namespace cifc::gaussian
