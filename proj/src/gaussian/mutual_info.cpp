#include "cifc/gaussian/mutual_info.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cifc/error.hpp"
#include "cifc/gaussian/channel.hpp"

namespace cifc::gaussian {

namespace {

Eigen::MatrixXcd sub(const Eigen::MatrixXcd& m, const Index& r, const Index& c) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(r[i], c[j]);
    }
  }
  return out;
}

Eigen::MatrixXcd pinv_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = kTol.pinv_rcond * std::max(1e-300, ev.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) inv(i) = ev(i) > cutoff ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

// Covariance of V_a given V_c.
Eigen::MatrixXcd conditional(const Eigen::MatrixXcd& cov, const Index& a, const Index& c) {
  Eigen::MatrixXcd saa = sub(cov, a, a);
  if (c.empty()) return saa;
  const Eigen::MatrixXcd sac = sub(cov, a, c);
  return saa - sac * pinv_hermitian(sub(cov, c, c)) * sac.adjoint();
}

// log2 det, or -inf when singular relative to `scale`.
double log2det(const Eigen::MatrixXcd& m, double scale) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  double s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev <= kTol.pinv_rcond * scale) return -std::numeric_limits<double>::infinity();
    s += std::log2(ev);
  }
  return s;
}

Index join(const Index& x, const Index& y) {
  Index out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

void require_psd(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) throw NonPsdInput(std::string(what) + ": not square");
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) throw NonPsdInput(std::string(what) + ": not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9 * scale) throw NonPsdInput(std::string(what) + ": negative eigenvalue");
}

double mutual_info_gaussian(const Eigen::MatrixXcd& cov, const Index& a, const Index& b, const Index& c) {
  require_psd(cov, "mutual_info_gaussian");
  if (a.empty() || b.empty()) return 0.0;
  const double scale = std::max(1e-300, cov.cwiseAbs().maxCoeff());
  const double ha = log2det(conditional(cov, a, c), scale);
  if (std::isfinite(ha)) {
    const double hab = log2det(conditional(cov, a, join(b, c)), scale);
    return std::isfinite(hab) ? std::max(0.0, ha - hab) : std::numeric_limits<double>::infinity();
  }
  const double hb = log2det(conditional(cov, b, c), scale);
  if (!std::isfinite(hb)) throw InvalidArgument("mutual_info_gaussian: both arguments are degenerate given the condition");
  const double hba = log2det(conditional(cov, b, join(a, c)), scale);
  return std::isfinite(hba) ? std::max(0.0, hb - hba) : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd joint_input_output_cov(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& h,
                                        const Eigen::MatrixXcd& noise) {
  require_psd(q, "input covariance");
  require_psd(noise, "noise covariance");
  if (h.cols() != q.rows() || h.rows() != noise.rows()) throw DimensionMismatch("joint_input_output_cov: shapes");
  const Eigen::Index n = q.rows();
  const Eigen::Index m = h.rows();
  Eigen::MatrixXcd j(n + m, n + m);
  j.topLeftCorner(n, n) = q;
  j.topRightCorner(n, m) = q * h.adjoint();
  j.bottomLeftCorner(m, n) = h * q;
  j.bottomRightCorner(m, m) = h * q * h.adjoint() + noise;
  return j;
}

}  // namespace cifc::gaussian
