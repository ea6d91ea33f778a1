#include "cifc/ldc/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "cifc/error.hpp"
#include "cifc/ldc/bounds.hpp"

namespace cifc::ldc {

using gf2::BitMatrix;
using gf2::BitVector;

namespace {

BitMatrix link(std::size_t m, int n) { return gf2::shift_matrix(m, m - static_cast<std::size_t>(n)); }

std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& rates) {
  std::vector<std::size_t> off(rates.size(), 0);
  for (std::size_t i = 1; i < rates.size(); ++i) off[i] = off[i - 1] + rates[i - 1];
  return off;
}

// Rows [r0, r0 + n) of the m x m identity.
BitMatrix row_selector(std::size_t m, std::size_t r0, std::size_t n) {
  BitMatrix p(n, m);
  for (std::size_t t = 0; t < n; ++t) p.set(t, r0 + t);
  return p;
}

LdcScheme zero_scheme(const LdcGains& g, std::string construction) {
  LdcScheme s{g, static_cast<std::size_t>(g.m()), std::vector<std::size_t>(g.k(), 0), {}, {}, std::move(construction)};
  for (std::size_t i = 0; i < g.k(); ++i) {
    s.encoders.emplace_back(s.m, 0);
    s.decoders.emplace_back(0, s.m);
  }
  return s;
}

}  // namespace

std::size_t LdcScheme::total_bits() const { return std::accumulate(rates.begin(), rates.end(), std::size_t{0}); }

std::size_t LdcScheme::offset(std::size_t user) const {
  return std::accumulate(rates.begin(), rates.begin() + static_cast<std::ptrdiff_t>(user), std::size_t{0});
}

BitVector channel_output(const LdcGains& g, std::size_t receiver, const std::vector<BitVector>& x) {
  const auto m = static_cast<std::size_t>(g.m());
  if (x.size() != g.k()) throw DimensionMismatch("channel_output: one input per transmitter expected");
  BitVector y(m);
  for (std::size_t i = 0; i < g.k(); ++i) y ^= link(m, g(receiver, i)).apply(x[i]);
  return y;
}

LdcScheme build_sym_scheme(int nd, int ni, std::size_t k) {
  const LdcGains g = LdcGains::symmetric(nd, ni, k);
  const auto m = static_cast<std::size_t>(std::max(nd, ni));
  if (m == 0) return zero_scheme(g, "zero");

  LdcScheme s{g, m, std::vector<std::size_t>(k, 0), {}, {}, {}};
  if (nd == ni) {
    // Every receiver sees the XOR of all inputs; user 1 alone uses the levels.
    s.construction = "mac";
    s.rates[0] = m;
    s.encoders.assign(k, BitMatrix(m, m));
    s.encoders[0] = BitMatrix::identity(m);
    s.decoders.assign(k, BitMatrix(0, m));
    s.decoders[0] = BitMatrix::identity(m);
    return s;
  }

  s.construction = "aggregate_interference";
  const std::size_t last = k - 1;
  const auto top = static_cast<std::size_t>(ni);
  for (std::size_t j = 0; j < last; ++j) s.rates[j] = m;
  s.rates[last] = static_cast<std::size_t>(std::max(0, nd - ni));
  const auto off = offsets_of(s.rates);
  const std::size_t total = s.total_bits();

  s.encoders.assign(k, BitMatrix(m, total));
  for (std::size_t j = 0; j < last; ++j) {
    for (std::size_t r = 0; r < m; ++r) s.encoders[j].set(r, off[j] + r);
    for (std::size_t r = 0; r < top; ++r) s.encoders[last].set(r, off[j] + r);
  }
  for (std::size_t t = 0; t < s.rates[last]; ++t) s.encoders[last].set(top + t, off[last] + t);

  const BitMatrix inv = gf2::invert(link(m, nd) + link(m, ni));
  s.decoders.assign(k, inv);
  s.decoders[last] = row_selector(m, top, s.rates[last]) * inv;
  return s;
}

namespace {

struct Generic3 {
  std::size_t m;
  BitMatrix g1, g2;        // m x 3m: receiver's view of (x1, x2, x3)
  BitMatrix c;             // 2m x r2: u2 -> (x2, x3)
  BitMatrix v2;            // m x r2: image of u2 at receiver 2
  std::size_t r1 = 0;
};

bool receiver2_separates(const Generic3& ctx, const BitMatrix& t) {
  const BitMatrix interference = ctx.g2 * t;
  return gf2::rank(gf2::hstack(ctx.v2, interference)) == ctx.v2.cols() + gf2::rank(interference);
}

}  // namespace

LdcScheme build_generic3_scheme(const LdcGains& g, std::uint64_t seed) {
  if (g.k() != 3) throw InvalidArgument("build_generic3_scheme: needs a 3-user channel");
  const auto m = static_cast<std::size_t>(g.m());
  if (m == 0) return zero_scheme(g, "zero");
  const SumRateBound bound = ldc3_sum_outer(g);

  Generic3 ctx;
  ctx.m = m;
  ctx.g1 = gf2::hstack(gf2::hstack(link(m, g(0, 0)), link(m, g(0, 1))), link(m, g(0, 2)));
  ctx.g2 = gf2::hstack(gf2::hstack(link(m, g(1, 0)), link(m, g(1, 1))), link(m, g(1, 2)));
  const BitMatrix g1_23 = gf2::hstack(link(m, g(0, 1)), link(m, g(0, 2)));
  const BitMatrix g2_23 = gf2::hstack(link(m, g(1, 1)), link(m, g(1, 2)));

  // u2 is sent inside the null space of receiver 1's view of (x2, x3).
  const BitMatrix k23 = gf2::null_space(g1_23);
  const auto u2_cols = gf2::basis_complete(BitMatrix(m, 0), g2_23 * k23);
  ctx.c = k23.select_columns(u2_cols);
  ctx.v2 = g2_23 * ctx.c;
  ctx.r1 = gf2::rank(ctx.g1);
  const std::size_t r2 = ctx.c.cols();
  const int n3_ceiling = std::max(g(0, 2), g(1, 2));
  const std::size_t r3 = static_cast<std::size_t>(std::max(0, g(2, 2) - n3_ceiling));

  if (static_cast<std::int64_t>(ctx.r1 + r2 + r3) != bound.value) {
    throw SchemeSearchFailed("build_generic3_scheme: layer ranks " + std::to_string(ctx.r1) + "+" +
                             std::to_string(r2) + "+" + std::to_string(r3) + " miss the bound " +
                             std::to_string(bound.value) + " for gains " + g.to_string());
  }

  // u1 directions: a basis of receiver 1's view, preferring vectors receiver 2
  // does not see at all.
  const BitMatrix pool = gf2::hstack(gf2::null_space(ctx.g2), BitMatrix::identity(3 * m));
  BitMatrix t = pool.select_columns(gf2::basis_complete(BitMatrix(m, 0), ctx.g1 * pool));
  if (!receiver2_separates(ctx, t)) {
    const BitMatrix n1 = gf2::null_space(ctx.g1);
    std::mt19937_64 rng(seed);
    bool found = false;
    for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
      const BitMatrix candidate = t + n1 * BitMatrix::random(n1.cols(), ctx.r1, rng);
      if (receiver2_separates(ctx, candidate)) {
        t = candidate;
        found = true;
      }
    }
    if (!found) {
      throw SchemeSearchFailed("build_generic3_scheme: no u1 precoder keeps receiver 2 decodable for gains " +
                               g.to_string());
    }
  }

  LdcScheme s{g, m, {ctx.r1, r2, r3}, {}, {}, r3 > 0 ? "layered_with_private_top" : "layered"};
  const auto off = offsets_of(s.rates);
  const std::size_t total = s.total_bits();
  s.encoders.assign(3, BitMatrix(m, total));
  for (std::size_t i = 0; i < 3; ++i) s.encoders[i].set_block(0, off[0], t.block(i * m, 0, m, ctx.r1));
  for (std::size_t i = 1; i < 3; ++i) s.encoders[i].set_block(0, off[1], ctx.c.block((i - 1) * m, 0, m, r2));

  if (r3 > 0) {
    // Receiver 3 reads its bottom r3 levels, where only x3's private layer
    // lands cleanly; the interference there is cancelled at the transmitter.
    const BitMatrix bottom = row_selector(m, m - r3, r3);
    BitMatrix y3(m, total);
    for (std::size_t i = 0; i < 3; ++i) y3 += link(m, g(2, i)) * s.encoders[i];
    const BitMatrix precancel = bottom * y3;

    BitMatrix embed(m, r3);
    for (std::size_t t3 = 0; t3 < r3; ++t3) embed.set(t3, t3);
    const BitMatrix lift = gf2::shift_matrix(m, static_cast<std::size_t>(n3_ceiling)) * embed;
    BitMatrix v3 = precancel;
    for (std::size_t t3 = 0; t3 < r3; ++t3) v3.set(t3, off[2] + t3, !v3.get(t3, off[2] + t3));
    s.encoders[2] += lift * v3;
  }

  BitMatrix d1;
  if (!gf2::solve_left(ctx.g1 * t, BitMatrix::identity(ctx.r1), d1)) {
    throw SchemeSearchFailed("build_generic3_scheme: receiver 1 decoder does not exist");
  }
  BitMatrix d2;
  BitMatrix target(r2, r2 + ctx.r1);
  target.set_block(0, 0, BitMatrix::identity(r2));
  if (!gf2::solve_left(gf2::hstack(ctx.v2, ctx.g2 * t), target, d2)) {
    throw SchemeSearchFailed("build_generic3_scheme: receiver 2 decoder does not exist");
  }
  s.decoders = {d1, d2, row_selector(m, m - r3, r3)};
  return s;
}

}  // namespace cifc::ldc
