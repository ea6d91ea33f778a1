#include "cifc/ldc/verify.hpp"

#include <algorithm>
#include <random>

#include "cifc/error.hpp"
#include "cifc/gf2/kernels.hpp"

namespace cifc::ldc {

using gf2::BitMatrix;
using gf2::BitVector;

namespace {

constexpr std::size_t kBatch = 4096;

std::uint64_t low_mask(std::size_t bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::string bits_of(std::uint64_t w, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) s[i] = ((w >> i) & 1U) ? '1' : '0';
  return s;
}

std::string structural_problem(const LdcScheme& s) {
  const std::size_t k = s.gains.k();
  if (s.rates.size() != k || s.encoders.size() != k || s.decoders.size() != k) {
    return "scheme must have one rate, encoder and decoder per user";
  }
  if (s.m != static_cast<std::size_t>(s.gains.m())) return "scheme level count differs from the gains";
  const std::size_t total = s.total_bits();
  for (std::size_t i = 0; i < k; ++i) {
    const BitMatrix& e = s.encoders[i];
    if (e.rows() != s.m || e.cols() != total) return "encoder " + std::to_string(i + 1) + " has the wrong shape";
    const BitMatrix& d = s.decoders[i];
    if (d.rows() != s.rates[i] || d.cols() != s.m) {
      return "decoder " + std::to_string(i + 1) + " has the wrong shape";
    }
    for (std::size_t c = s.offset(i) + s.rates[i]; c < total; ++c) {
      if (e.column(c).any()) {
        return "encoder " + std::to_string(i + 1) + " uses a message of a later user";
      }
    }
  }
  return {};
}

struct WordPipeline {
  const LdcScheme& s;
  const gf2::kernels::KernelTable& kt = gf2::kernels::active();
  std::vector<std::vector<std::uint64_t>> enc_cols, dec_cols;
  std::vector<std::size_t> off;
  std::vector<std::vector<std::uint64_t>> x;
  std::vector<std::uint64_t> y, decoded;

  explicit WordPipeline(const LdcScheme& sc) : s(sc) {
    for (std::size_t i = 0; i < s.gains.k(); ++i) {
      enc_cols.push_back(s.encoders[i].column_words());
      dec_cols.push_back(s.decoders[i].column_words());
      off.push_back(s.offset(i));
    }
    x.assign(s.gains.k(), std::vector<std::uint64_t>(kBatch));
    y.resize(kBatch);
    decoded.resize(kBatch);
  }

  // Returns false and fills `ce` on the first mismatch.
  bool run(std::span<const std::uint64_t> msgs, Counterexample& ce) {
    const std::size_t n = msgs.size();
    const std::size_t k = s.gains.k();
    const std::uint64_t mmask = low_mask(s.m);
    for (std::size_t i = 0; i < k; ++i) kt.apply_columns(enc_cols[i], msgs, std::span(x[i]).first(n));
    for (std::size_t l = 0; l < k; ++l) {
      auto yv = std::span(y).first(n);
      std::fill(yv.begin(), yv.end(), 0);
      for (std::size_t i = 0; i < k; ++i) {
        const auto shift = static_cast<unsigned>(s.m - static_cast<std::size_t>(s.gains(l, i)));
        kt.shift_xor(std::span<const std::uint64_t>(x[i]).first(n), shift, mmask, yv);
      }
      auto dv = std::span(decoded).first(n);
      kt.apply_columns(dec_cols[l], yv, dv);
      const std::uint64_t rmask = low_mask(s.rates[l]);
      for (std::size_t t = 0; t < n; ++t) {
        const std::uint64_t want = (msgs[t] >> off[l]) & rmask;
        if (s.rates[l] == 0 || dv[t] == want) continue;
        ce = {l, bits_of(msgs[t], s.total_bits()), bits_of(want, s.rates[l]), bits_of(dv[t], s.rates[l])};
        return false;
      }
    }
    return true;
  }
};

// Slow path for schemes carrying more than 64 message bits.
bool run_vector(const LdcScheme& s, const BitVector& u, Counterexample& ce) {
  const std::size_t k = s.gains.k();
  std::vector<BitVector> x;
  for (std::size_t i = 0; i < k; ++i) x.push_back(s.encoders[i].apply(u));
  for (std::size_t l = 0; l < k; ++l) {
    const BitVector got = s.decoders[l].apply(channel_output(s.gains, l, x));
    BitVector want(s.rates[l]);
    for (std::size_t t = 0; t < s.rates[l]; ++t) want.set(t, u.get(s.offset(l) + t));
    if (got == want) continue;
    ce = {l, u.to_string(), want.to_string(), got.to_string()};
    return false;
  }
  return true;
}

}  // namespace

VerificationReport verify_scheme(const LdcScheme& scheme, const VerifyOptions& opts) {
  VerificationReport rep;
  if (auto problem = structural_problem(scheme); !problem.empty()) {
    rep.failure = problem;
    return rep;
  }
  const std::size_t total = scheme.total_bits();
  VerifyMode mode = opts.mode;
  if (mode == VerifyMode::Auto) mode = total <= opts.exhaustive_limit_bits ? VerifyMode::Exhaustive : VerifyMode::Sampled;
  if (mode == VerifyMode::Exhaustive && total > 40) {
    throw InvalidArgument("verify_scheme: exhaustive check of " + std::to_string(total) + " bits is infeasible");
  }
  rep.mode = mode;

  Counterexample ce;
  std::mt19937_64 rng(opts.seed);
  if (total > 64) {
    for (std::uint64_t t = 0; t < opts.samples; ++t) {
      ++rep.tuples_checked;
      if (!run_vector(scheme, BitVector::random(total, rng), ce)) {
        rep.failure = "receiver " + std::to_string(ce.receiver + 1) + " decoded the wrong message";
        rep.counterexample = ce;
        return rep;
      }
    }
    rep.passed = true;
    return rep;
  }

  WordPipeline pipe(scheme);
  std::vector<std::uint64_t> msgs(kBatch);
  const std::uint64_t count = mode == VerifyMode::Exhaustive ? (std::uint64_t{1} << total) : opts.samples;
  const std::uint64_t mask = low_mask(total);
  for (std::uint64_t start = 0; start < count; start += kBatch) {
    const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, count - start));
    for (std::size_t t = 0; t < n; ++t) msgs[t] = mode == VerifyMode::Exhaustive ? start + t : rng() & mask;
    rep.tuples_checked += n;
    if (!pipe.run(std::span<const std::uint64_t>(msgs).first(n), ce)) {
      rep.failure = "receiver " + std::to_string(ce.receiver + 1) + " decoded the wrong message";
      rep.counterexample = ce;
      return rep;
    }
  }
  rep.passed = true;
  return rep;
}

}  // namespace cifc::ldc
