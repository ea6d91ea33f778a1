#include <doctest.h>

#include <optional>
#include <random>
#include <vector>

#include "cifc/error.hpp"
#include "cifc/gf2/kernels.hpp"
#include "cifc/ldc/bounds.hpp"
#include "cifc/ldc/scheme.hpp"
#include "cifc/ldc/verify.hpp"

using namespace cifc::ldc;
using cifc::gf2::BitMatrix;
using cifc::gf2::BitVector;

namespace {

// Decodes one random message tuple with plain matrix-vector products,
// independently of the batch kernels.
bool decodes(const LdcScheme& s, std::mt19937_64& rng) {
  const BitVector u = BitVector::random(s.total_bits(), rng);
  std::vector<BitVector> x;
  for (const auto& e : s.encoders) x.push_back(e.apply(u));
  for (std::size_t l = 0; l < s.gains.k(); ++l) {
    const BitVector got = s.decoders[l].apply(channel_output(s.gains, l, x));
    for (std::size_t t = 0; t < s.rates[l]; ++t) {
      if (got.get(t) != u.get(s.offset(l) + t)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("symmetric scheme meets capacity and decodes for K = 2..6") {
  std::mt19937_64 rng(1);
  for (std::size_t k = 2; k <= 6; ++k) {
    for (int nd = 0; nd <= 6; ++nd) {
      for (int ni = 0; ni <= 6; ++ni) {
        const LdcScheme s = build_sym_scheme(nd, ni, k);
        CAPTURE(k);
        CAPTURE(nd);
        CAPTURE(ni);
        CHECK(static_cast<std::int64_t>(s.total_bits()) == ldc_k_sym_sum_capacity(nd, ni, k).value);
        const VerificationReport rep = verify_scheme(s);
        CHECK_MESSAGE(rep.passed, rep.failure);
        for (int t = 0; t < 5; ++t) CHECK(decodes(s, rng));
      }
    }
  }
}

TEST_CASE("symmetric scheme structure for the running example") {
  const LdcScheme s = build_sym_scheme(2, 1, 3);
  CHECK(s.rates == std::vector<std::size_t>{2, 2, 1});
  CHECK(s.construction == "aggregate_interference");
  CHECK(build_sym_scheme(3, 3, 3).construction == "mac");
}

TEST_CASE("generic 3-user scheme achieves the bound for every gain tuple up to 3") {
  std::size_t checked = 0;
  for (int code = 0; code < (1 << 18); ++code) {
    std::vector<int> n(9);
    for (std::size_t i = 0; i < 9; ++i) n[i] = (code >> (2 * i)) & 3;
    const LdcGains g(3, n);
    std::optional<LdcScheme> built;
    try {
      built = build_generic3_scheme(g);
    } catch (const cifc::SchemeSearchFailed& e) {
      FAIL(e.what());
    }
    const LdcScheme& s = *built;
    REQUIRE_MESSAGE(static_cast<std::int64_t>(s.total_bits()) == ldc3_sum_outer(g).value, g.to_string());
    const VerificationReport rep = verify_scheme(s);
    REQUIRE_MESSAGE(rep.passed, g.to_string() << ": " << rep.failure);
    ++checked;
  }
  CHECK(checked == (1U << 18));
}

TEST_CASE("generic scheme on larger random channels") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<int> n(9);
    for (int& v : n) v = static_cast<int>(rng() % 9);
    const LdcGains g(3, n);
    const LdcScheme s = build_generic3_scheme(g, 5);
    CHECK(static_cast<std::int64_t>(s.total_bits()) == ldc3_sum_outer(g).value);
    const VerificationReport rep = verify_scheme(s);
    CHECK_MESSAGE(rep.passed, g.to_string() << ": " << rep.failure);
    CHECK(decodes(s, rng));
  }
}

TEST_CASE("verification catches broken schemes with a counterexample") {
  LdcScheme s = build_sym_scheme(2, 1, 3);
  s.decoders[1].set(0, 0, !s.decoders[1].get(0, 0));
  const VerificationReport rep = verify_scheme(s);
  CHECK_FALSE(rep.passed);
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->receiver == 1);
  CHECK(rep.counterexample->expected != rep.counterexample->decoded);

  LdcScheme leak = build_sym_scheme(2, 1, 3);
  leak.encoders[0].set(0, leak.offset(2));
  const VerificationReport leak_rep = verify_scheme(leak);
  CHECK_FALSE(leak_rep.passed);
  CHECK(leak_rep.failure.find("later user") != std::string::npos);

  LdcScheme shape = build_sym_scheme(2, 1, 3);
  shape.decoders.pop_back();
  CHECK_FALSE(verify_scheme(shape).passed);
}

TEST_CASE("verification modes and ISAs agree") {
  const LdcScheme s = build_sym_scheme(5, 2, 5);  // 23 bits: sampled by default
  const VerificationReport sampled = verify_scheme(s);
  CHECK(sampled.mode == VerifyMode::Sampled);
  CHECK(sampled.tuples_checked == 10000);
  CHECK(sampled.passed);

  const LdcScheme small = build_sym_scheme(3, 1, 3);
  for (auto isa : {cifc::gf2::kernels::Isa::Scalar, cifc::gf2::kernels::Isa::Avx2}) {
    cifc::gf2::kernels::force(isa);
    const VerificationReport r = verify_scheme(small, {VerifyMode::Exhaustive});
    CHECK(r.passed);
    CHECK(r.tuples_checked == (std::uint64_t{1} << small.total_bits()));
  }
  cifc::gf2::kernels::reset();

  const LdcScheme wide = build_sym_scheme(20, 9, 5);  // 91 bits: vector path
  CHECK(verify_scheme(wide, {VerifyMode::Sampled, 20, 300, 1}).passed);
  CHECK_THROWS_AS(verify_scheme(wide, {VerifyMode::Exhaustive}), cifc::InvalidArgument);
}
