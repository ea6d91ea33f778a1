#include "cifc/ldc/dominance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "cifc/error.hpp"
#include "cifc/ldc/bounds.hpp"

namespace cifc::ldc {

namespace {

// Joint variables whose entropies make up the chain sum, in order:
// Y1 | X1,Y1,Y2 | X1,Y1 | X1,X2,Y1,Y2,Y3 | X1,X2,Y1,Y2
constexpr std::size_t kVars = 5;
constexpr std::array<double, kVars> kSign = {1, 1, -1, 1, -1};

struct AtomKeys {
  std::size_t key_space = 0;
  std::vector<std::array<std::uint32_t, kVars>> keys;
};

std::uint32_t out_word(const LdcGains& g, std::size_t l, const std::array<std::uint32_t, 3>& x) {
  const auto m = static_cast<unsigned>(g.m());
  const std::uint32_t mask = (1U << m) - 1;
  std::uint32_t y = 0;
  for (std::size_t i = 0; i < 3; ++i) y ^= (x[i] << (m - static_cast<unsigned>(g(l, i)))) & mask;
  return y;
}

AtomKeys atom_keys(const LdcGains& g) {
  const auto m = static_cast<unsigned>(g.m());
  const std::uint32_t mask = (1U << m) - 1;
  AtomKeys ak;
  ak.key_space = std::size_t{1} << (5 * m);
  const std::size_t atoms = std::size_t{1} << (3 * m);
  ak.keys.resize(atoms);
  for (std::uint32_t a = 0; a < atoms; ++a) {
    const std::array<std::uint32_t, 3> x = {a & mask, (a >> m) & mask, (a >> (2 * m)) & mask};
    const std::uint32_t y1 = out_word(g, 0, x), y2 = out_word(g, 1, x), y3 = out_word(g, 2, x);
    auto pack = [m](std::initializer_list<std::uint32_t> parts) {
      std::uint32_t k = 0;
      unsigned sh = 0;
      for (auto p : parts) {
        k |= p << sh;
        sh += m;
      }
      return k;
    };
    ak.keys[a] = {pack({y1}), pack({x[0], y1, y2}), pack({x[0], y1}), pack({x[0], x[1], y1, y2, y3}),
                  pack({x[0], x[1], y1, y2})};
  }
  return ak;
}

double chain_sum(const AtomKeys& ak, std::span<const double> pmf, std::vector<double>& scratch) {
  scratch.assign(ak.key_space, 0.0);
  double total = 0;
  for (std::size_t v = 0; v < kVars; ++v) {
    for (std::size_t a = 0; a < pmf.size(); ++a) scratch[ak.keys[a][v]] += pmf[a];
    double h = 0;
    for (std::size_t a = 0; a < pmf.size(); ++a) {
      double& p = scratch[ak.keys[a][v]];
      if (p > 0) h -= p * std::log2(p);
      p = 0;
    }
    total += kSign[v] * h;
  }
  return total;
}

void check_shape(const LdcGains& g) {
  if (g.k() != 3) throw InvalidArgument("dominance check: needs a 3-user channel");
  if (g.m() > 3) throw InvalidArgument("dominance check: supports at most 3 levels");
}

void normalize(std::vector<double>& p) {
  double s = 0;
  for (double v : p) s += v;
  for (double& v : p) v /= s;
}

void random_pmf(std::size_t trial, unsigned bits, std::mt19937_64& rng, std::vector<double>& p) {
  const std::size_t atoms = std::size_t{1} << bits;
  p.assign(atoms, 0.0);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (trial % 4) {
    case 0:  // flat Dirichlet
      for (double& v : p) v = expo(rng);
      break;
    case 1: {  // few atoms
      const std::size_t support = 1 + rng() % std::min<std::size_t>(16, atoms);
      for (std::size_t t = 0; t < support; ++t) p[rng() % atoms] += expo(rng);
      break;
    }
    case 2: {  // independent bits
      std::vector<double> bias(bits);
      for (double& b : bias) b = unif(rng);
      for (std::size_t a = 0; a < atoms; ++a) {
        double w = 1;
        for (unsigned b = 0; b < bits; ++b) w *= ((a >> b) & 1U) ? bias[b] : 1 - bias[b];
        p[a] = w;
      }
      break;
    }
    default: {  // uniform on a random affine subspace
      const unsigned dim = bits ? static_cast<unsigned>(rng() % (bits + 1)) : 0;
      std::vector<std::uint64_t> basis(dim);
      for (auto& b : basis) b = rng() & (atoms - 1);
      const std::uint64_t shift = rng() & (atoms - 1);
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << dim); ++c) {
        std::uint64_t a = shift;
        for (unsigned j = 0; j < dim; ++j) {
          if ((c >> j) & 1U) a ^= basis[j];
        }
        p[a] += 1;
      }
      break;
    }
  }
  normalize(p);
}

}  // namespace

double chain_entropy_sum(const LdcGains& g, std::span<const double> pmf) {
  check_shape(g);
  const AtomKeys ak = atom_keys(g);
  if (pmf.size() != ak.keys.size()) throw DimensionMismatch("chain_entropy_sum: pmf has the wrong size");
  std::vector<double> scratch;
  return chain_sum(ak, pmf, scratch);
}

DominanceReport outer_bound_dominance_check(const LdcGains& g, std::size_t trials, std::uint64_t seed,
                                            double tolerance) {
  check_shape(g);
  DominanceReport rep;
  rep.closed_form = static_cast<double>(ldc3_sum_outer(g).value);
  const AtomKeys ak = atom_keys(g);
  const auto bits = static_cast<unsigned>(3 * g.m());
  std::mt19937_64 rng(seed);
  std::vector<double> pmf, scratch;
  rep.max_observed = -1;
  for (std::size_t t = 0; t < trials; ++t) {
    if (t == 0) {
      pmf.assign(ak.keys.size(), 1.0 / static_cast<double>(ak.keys.size()));
    } else {
      random_pmf(t, bits, rng, pmf);
    }
    rep.max_observed = std::max(rep.max_observed, chain_sum(ak, pmf, scratch));
    ++rep.trials;
  }
  rep.passed = rep.max_observed <= rep.closed_form + tolerance;
  return rep;
}

}  // namespace cifc::ldc
