#include "cifc/gaussian/optimize.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "cifc/error.hpp"
#include "cifc/gaussian/bounds.hpp"
#include "cifc/gaussian/mutual_info.hpp"

namespace cifc::gaussian {

namespace {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Inner bound: coordinate ascent over beta and the gamma magnitudes.

struct InnerPoint {
  double beta = 0;
  std::vector<double> gamma;  // gamma[0] unused
};

struct InnerProblem {
  const GaussianSymChannel& ch;
  std::size_t k;

  double beta_max(const InnerPoint& x) const {
    if (k < 3) return 0.0;
    double b2 = (1.0 - x.gamma[k - 1] * x.gamma[k - 1]) / static_cast<double>(k - 2);
    for (std::size_t j = 1; j + 1 < k; ++j) b2 = std::min(b2, 1.0 - x.gamma[j] * x.gamma[j]);
    return std::sqrt(std::max(0.0, b2));
  }
  double gamma_max(const InnerPoint& x, std::size_t j) const {
    const double used = j + 1 < k ? x.beta * x.beta : static_cast<double>(k - 2) * x.beta * x.beta;
    return std::sqrt(std::max(0.0, 1.0 - used));
  }

  DpcParams params(const InnerPoint& x) const {
    DpcParams p = DpcParams::zeros(ch);
    p.beta = k >= 3 ? x.beta : 0.0;
    for (std::size_t j = 1; j < k; ++j) {
      const double g = std::min(x.gamma[j], gamma_max(x, j));
      p.gamma[j] = g;
      const double used = j + 1 < k ? x.beta * x.beta : static_cast<double>(k - 2) * x.beta * x.beta;
      p.alpha[j] = std::sqrt(std::max(0.0, 1.0 - used - g * g));
    }
    return p;
  }

  double value(const InnerPoint& x) const { return dpc_rates(ch, params(x)).sum(); }

  InnerPoint from_params(const DpcParams& p) const {
    InnerPoint x;
    x.beta = k >= 3 ? std::abs(p.beta) : 0.0;
    x.gamma.assign(k, 0.0);
    for (std::size_t j = 1; j < k; ++j) x.gamma[j] = std::abs(p.gamma[j]);
    return x;
  }

  std::size_t dims() const { return k >= 3 ? k : k - 1; }
  double& coord(InnerPoint& x, std::size_t c) const { return k >= 3 ? (c == 0 ? x.beta : x.gamma[c]) : x.gamma[c + 1]; }
  double upper(const InnerPoint& x, std::size_t c) const {
    if (k >= 3) return c == 0 ? beta_max(x) : gamma_max(x, c);
    return gamma_max(x, c + 1);
  }
};

class Budget {
 public:
  explicit Budget(std::size_t cap) : cap_(cap) {}
  bool take() {
    if (used_ >= cap_) return false;
    ++used_;
    return true;
  }
  bool exhausted() const { return used_ >= cap_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return cap_ - used_; }

 private:
  std::size_t cap_;
  std::size_t used_ = 0;
};

// Maximizes along one coordinate; returns false when the budget ran out.
bool line_search(const InnerProblem& prob, InnerPoint& x, double& fx, std::size_t c, Budget& budget) {
  const double hi = prob.upper(x, c);
  if (hi <= 0) return true;
  double& v = prob.coord(x, c);
  const double v0 = v;
  double best_v = v0;
  double best_f = fx;
  auto eval = [&](double t, double& out) {
    if (!budget.take()) return false;
    v = t;
    out = prob.value(x);
    if (out > best_f) {
      best_f = out;
      best_v = t;
    }
    return true;
  };
  constexpr int kGrid = 16;
  const double h = hi / kGrid;
  bool ok = true;
  for (int i = 0; i <= kGrid && ok; ++i) {
    double f = 0;
    ok = eval(h * i, f);
  }
  // Golden-section refinement around the best point found so far.
  double a = std::max(0.0, best_v - h);
  double b = std::min(hi, best_v + h);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = 0, f2 = 0;
  if (ok) ok = eval(x1, f1);
  if (ok) ok = eval(x2, f2);
  for (int it = 0; it < 40 && ok && b - a > 1e-12; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      ok = eval(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      ok = eval(x2, f2);
    }
  }
  v = best_v;
  fx = best_f;
  return ok;
}

// ---------------------------------------------------------------------------
// Outer bound: chain of conditional mutual informations, concave in q.

struct ChainEval {
  double value = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd grad;  // d value = Re tr(grad dq)
  bool ok = false;
};

Index range(Eigen::Index lo, Eigen::Index hi) {
  Index r;
  for (Eigen::Index i = lo; i < hi; ++i) r.push_back(i);
  return r;
}

Eigen::MatrixXcd pick(const Eigen::MatrixXcd& m, const Index& r, const Index& c) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(r[i], c[j]);
    }
  }
  return out;
}

Eigen::MatrixXcd pinv_psd(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = kTol.pinv_rcond * std::max(1e-300, ev.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) inv(i) = ev(i) > cutoff ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

double noise_chain(const Eigen::MatrixXcd& noise) {
  // sum_u h(Z_u | Z_<u) in log2 det units: log2 det of the whole matrix.
  Eigen::LLT<Eigen::MatrixXcd> llt(noise);
  if (llt.info() != Eigen::Success) throw NonPsdInput("noise covariance is not positive definite");
  double s = 0;
  for (Eigen::Index i = 0; i < noise.rows(); ++i) s += 2.0 * std::log(llt.matrixL()(i, i).real());
  return s / std::numbers::ln2;
}

ChainEval chain_eval(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& noise,
                     bool want_grad) {
  const Eigen::Index k = h.rows();
  ChainEval out;
  double total = 0;
  if (want_grad) out.grad = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index u = 0; u < k; ++u) {
    const Index s = range(0, u);
    const Index r = range(u, k);
    const Eigen::Index nr = k - u;
    Eigen::MatrixXcd p = pick(q, r, r);
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(nr, u);
    if (u > 0) {
      const Eigen::MatrixXcd qrs = pick(q, r, s);
      w = qrs * pinv_psd(pick(q, s, s));
      p -= w * qrs.adjoint();
    }
    // V maps an R x R gradient block back to full K x K coordinates.
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(k, nr);
    v.bottomRows(nr) = Eigen::MatrixXcd::Identity(nr, nr);
    if (u > 0) v.topRows(u) = -w.adjoint();
    for (int part = 0; part < 2; ++part) {
      const Eigen::Index t_len = part == 0 ? u + 1 : u;
      if (t_len == 0) continue;
      const double sign = part == 0 ? 1.0 : -1.0;
      const Index t = range(0, t_len);
      const Eigen::MatrixXcd htr = pick(h, t, r);
      const Eigen::MatrixXcd m = htr * p * htr.adjoint() + pick(noise, t, t);
      Eigen::LLT<Eigen::MatrixXcd> llt(m);
      if (llt.info() != Eigen::Success) return out;
      double ld = 0;
      for (Eigen::Index i = 0; i < t_len; ++i) ld += 2.0 * std::log(llt.matrixL()(i, i).real());
      total += sign * ld;
      if (want_grad) {
        const Eigen::MatrixXcd lh = llt.matrixL().solve(htr);
        out.grad += sign * (v * (lh.adjoint() * lh) * v.adjoint());
      }
    }
  }
  out.value = total / std::numbers::ln2 - noise_chain(noise);
  if (want_grad) {
    out.grad /= std::numbers::ln2;
    out.grad = (0.5 * (out.grad + out.grad.adjoint())).eval();
  }
  out.ok = std::isfinite(out.value);
  return out;
}

void project_rows(Eigen::MatrixXcd& g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double n = g.row(i).norm();
    if (n > 1.0) g.row(i) /= n;
  }
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& q) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal();
}

// Upper bound on max over {q PSD, diag(q) <= 1} of Re tr(a (q - q0)).
double linear_dual_gap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& q0) {
  const Eigen::Index k = a.rows();
  const double base = (a * q0).trace().real();
  auto dual_value = [&](Eigen::VectorXd lambda) {
    lambda = lambda.cwiseMax(0.0);
    Eigen::MatrixXcd e = a;
    for (Eigen::Index i = 0; i < k; ++i) e(i, i) -= lambda(i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
    const double shift = std::max(0.0, es.eigenvalues().maxCoeff());
    return lambda.sum() + static_cast<double>(k) * shift;
  };
  Eigen::VectorXd kkt(k), gersh(k);
  const Eigen::MatrixXcd aq = a * q0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double qi = q0(i, i).real();
    kkt(i) = qi > 1e-12 ? aq(i, i).real() / qi : a(i, i).real();
    double row = a(i, i).real();
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j != i) row += std::abs(a(i, j));
    }
    gersh(i) = row;
  }
  return std::max(0.0, std::min(dual_value(kkt), dual_value(gersh)) - base);
}

}  // namespace

// ---------------------------------------------------------------------------

InnerOptResult optimize_inner(const GaussianSymChannel& ch, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw InvalidArgument("optimize_inner: budget must be at least 1");
  const InnerProblem prob{ch, ch.k};
  std::vector<InnerPoint> starts;
  starts.push_back(prob.from_params(closed_form_params(ch)));
  starts.push_back(prob.from_params(weak_branch_params(ch)));
  starts.push_back(prob.from_params(strong_branch_params(ch)));
  InnerPoint beam;
  beam.gamma.assign(ch.k, 0.0);
  starts.push_back(beam);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (starts.size() < 16) {
    InnerPoint x;
    x.gamma.assign(ch.k, 0.0);
    for (std::size_t c = 0; c < prob.dims(); ++c) prob.coord(x, c) = unif(rng) * prob.upper(x, c);
    starts.push_back(x);
  }

  std::vector<double> values;
  for (const auto& x : starts) values.push_back(prob.value(x));
  std::vector<std::size_t> order(starts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  InnerOptResult res;
  InnerPoint best = starts[order[0]];
  double best_f = values[order[0]];
  res.best_start_value = best_f;

  Budget spend(budget - 1);
  for (std::size_t idx : order) {
    if (spend.exhausted()) break;
    InnerPoint x = starts[idx];
    double fx = values[idx];
    bool ok = true;
    for (int sweep = 0; sweep < 200 && ok; ++sweep) {
      const double before = fx;
      for (std::size_t c = 0; c < prob.dims() && ok; ++c) ok = line_search(prob, x, fx, c, spend);
      if (fx - before < kTol.convergence) break;
    }
    if (fx > best_f) {
      best_f = fx;
      best = x;
    }
  }
  res.params = prob.params(best);
  res.sum_rate = best_f;
  res.evaluations = spend.used();
  return res;
}

double chain_sum_bound(const GaussianSymChannel& ch, const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& noise) {
  require_psd(q, "input covariance");
  require_psd(noise, "noise covariance");
  const auto k = static_cast<Eigen::Index>(ch.k);
  if (q.rows() != k || noise.rows() != k) throw DimensionMismatch("chain_sum_bound: covariances must be K x K");
  const ChainEval e = chain_eval(channel_matrix(ch), q, noise, false);
  if (!e.ok) throw NonPsdInput("chain_sum_bound: conditional output covariance is singular");
  return e.value;
}

Eigen::MatrixXcd NoiseCorrelation::matrix() const {
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Identity(3, 3);
  n(0, 1) = n(1, 0) = r12;
  n(0, 2) = n(2, 0) = r13;
  n(1, 2) = n(2, 1) = r23;
  return n;
}

ChainMaximum maximize_chain_bound(const GaussianSymChannel& ch, const Eigen::MatrixXcd& noise,
                                  const Eigen::MatrixXcd& q_start, std::size_t max_evaluations) {
  const Eigen::MatrixXcd h = channel_matrix(ch);
  const Eigen::Index k = h.rows();
  ChainMaximum res;
  Eigen::MatrixXcd g = psd_sqrt(q_start);
  project_rows(g);
  ChainEval cur = chain_eval(h, g * g.adjoint(), noise, true);
  res.evaluations = 1;
  if (!cur.ok) {
    g = Eigen::MatrixXcd::Identity(k, k) * std::sqrt(0.5);
    cur = chain_eval(h, g * g.adjoint(), noise, true);
    ++res.evaluations;
  }
  double step = 0;
  int stalls = 0;
  while (res.evaluations < max_evaluations && cur.ok) {
    const Eigen::MatrixXcd d = cur.grad * g;
    const double dn = d.norm();
    if (dn < 1e-14) break;
    if (step == 0) step = 0.1 / dn;
    Eigen::MatrixXcd trial = g + step * d;
    project_rows(trial);
    const ChainEval next = chain_eval(h, trial * trial.adjoint(), noise, true);
    ++res.evaluations;
    if (next.ok && next.value > cur.value) {
      stalls = next.value - cur.value < 1e-11 ? stalls + 1 : 0;
      g = trial;
      cur = next;
      step *= 1.6;
      if (stalls >= 8) break;
    } else {
      step *= 0.3;
      if (step * dn < 1e-15) break;
    }
  }
  res.q = g * g.adjoint();
  res.value = cur.value;

  // Certificate at a strictly feasible interior point.
  constexpr double kDelta = 1e-7;
  const Eigen::MatrixXcd qr = (1.0 - kDelta) * res.q + kDelta * Eigen::MatrixXcd::Identity(k, k);
  const ChainEval at = chain_eval(h, qr, noise, true);
  ++res.evaluations;
  res.certified = at.ok ? at.value + linear_dual_gap(at.grad, qr) : std::numeric_limits<double>::infinity();
  if (at.ok) res.value = std::max(res.value, at.value);
  return res;
}

OuterOptResult optimize_outer(const GaussianSymChannel& ch, std::size_t budget, std::uint64_t seed) {
  if (ch.k != 3) throw InvalidArgument("optimize_outer: only K = 3 is supported");
  if (budget < 1) throw InvalidArgument("optimize_outer: budget must be at least 1");
  OuterOptResult res;
  res.analytic = outer_sum(ch);
  Budget spend(budget);
  const double inf = std::numeric_limits<double>::infinity();

  // Input covariance starts.
  std::vector<Eigen::MatrixXcd> starts;
  auto total_cov = [&](const DpcParams& p) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(3, 3);
    for (const auto& m : induced_covariances(ch, p)) s += m;
    return s;
  };
  starts.push_back(total_cov(closed_form_params(ch)));
  starts.push_back(total_cov(weak_branch_params(ch)));
  starts.push_back(Eigen::MatrixXcd::Identity(3, 3));
  {
    Eigen::VectorXcd a(3);
    a << (ch.hi == cd(0, 0) ? cd(1, 0) : ch.hi / std::abs(ch.hi)), 1.0, 1.0;
    starts.push_back(a * a.adjoint());
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  {
    Eigen::MatrixXcd g(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) g(i, j) = cd(gauss(rng), gauss(rng));
    }
    project_rows(g);
    starts.push_back(g * g.adjoint());
  }

  auto psd_ok = [](const NoiseCorrelation& r) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= 1e-3;
  };

  double best = inf;
  NoiseCorrelation best_rho;
  Eigen::MatrixXcd best_q = starts[0];

  // Independent noise: every start, then the best one continues.
  const NoiseCorrelation zero;
  const std::size_t per_start = std::max<std::size_t>(2, budget / 20);
  double indep = inf;
  double indep_value = -inf;
  Eigen::MatrixXcd indep_q = starts[0];
  for (const auto& q0 : starts) {
    if (spend.remaining() < 2) break;
    const std::size_t cap = std::min(per_start, spend.remaining());
    const ChainMaximum m = maximize_chain_bound(ch, zero.matrix(), q0, cap);
    for (std::size_t i = 0; i < m.evaluations; ++i) spend.take();
    indep = std::min(indep, m.certified);
    if (m.value > indep_value) {
      indep_value = m.value;
      indep_q = m.q;
    }
  }
  if (spend.remaining() >= 2) {
    const std::size_t cap = std::min(std::max<std::size_t>(2, budget / 10), spend.remaining());
    const ChainMaximum m = maximize_chain_bound(ch, zero.matrix(), indep_q, cap);
    for (std::size_t i = 0; i < m.evaluations; ++i) spend.take();
    indep = std::min(indep, m.certified);
    if (m.value > indep_value) indep_q = m.q;
  }
  res.independent_noise_value = indep;
  best = indep;
  best_q = indep_q;

  const std::size_t per_point = std::max<std::size_t>(2, budget / 80);
  auto try_point = [&](const NoiseCorrelation& r) {
    if (spend.remaining() < 2 || !psd_ok(r)) return false;
    const ChainMaximum m = maximize_chain_bound(ch, r.matrix(), best_q, std::min(per_point, spend.remaining()));
    for (std::size_t i = 0; i < m.evaluations; ++i) spend.take();
    if (m.certified < best) {
      best = m.certified;
      best_rho = r;
      best_q = m.q;
      return true;
    }
    return false;
  };

  const std::array<double, 3> coarse = {-0.9, 0.0, 0.9};
  for (double a : coarse) {
    for (double b : coarse) {
      for (double c : coarse) {
        if (a == 0 && b == 0 && c == 0) continue;
        try_point({a, b, c});
      }
    }
  }

  // Pattern search around the best correlation.
  for (double stepsize = 0.3; stepsize >= 0.01 && spend.remaining() >= 2; stepsize /= 2) {
    bool moved = true;
    while (moved && spend.remaining() >= 2) {
      moved = false;
      for (int coord = 0; coord < 3 && !moved; ++coord) {
        for (double dir : {-1.0, 1.0}) {
          NoiseCorrelation r = best_rho;
          double& v = coord == 0 ? r.r12 : coord == 1 ? r.r13 : r.r23;
          v = std::clamp(v + dir * stepsize, -0.99, 0.99);
          if (try_point(r)) {
            moved = true;
            break;
          }
        }
      }
    }
  }

  // Spend what is left on tightening the certificate at the best point.
  if (spend.remaining() >= 2) {
    const ChainMaximum m = maximize_chain_bound(ch, best_rho.matrix(), best_q, spend.remaining());
    for (std::size_t i = 0; i < m.evaluations; ++i) spend.take();
    best = std::min(best, m.certified);
  }

  res.chain_value = best;
  res.rho = best_rho;
  res.evaluations = spend.used();
  res.analytic_tighter = res.analytic <= best;
  res.value = std::min(res.analytic, best);
  return res;
}

}  // namespace cifc::gaussian
