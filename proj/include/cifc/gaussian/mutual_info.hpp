#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace cifc::gaussian {

using Index = std::vector<Eigen::Index>;

/// I(V_a; V_b | V_c) in bits for a circularly-symmetric complex Gaussian
/// vector V with covariance `cov`. The order of indices inside a set does not
/// matter. Returns +inf when V_a is a deterministic function of (V_b, V_c)
/// but not of V_c. Throws NonPsdInput when `cov` is not PSD.
double mutual_info_gaussian(const Eigen::MatrixXcd& cov, const Index& a, const Index& b, const Index& c);

/// Covariance of (X, Y) with Y = H X + Z, X ~ CN(0, q), Z ~ CN(0, noise).
Eigen::MatrixXcd joint_input_output_cov(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& h,
                                        const Eigen::MatrixXcd& noise);

/// Throws NonPsdInput unless `m` is Hermitian PSD within a relative tolerance.
void require_psd(const Eigen::MatrixXcd& m, const char* what);

}  // namespace cifc::gaussian
