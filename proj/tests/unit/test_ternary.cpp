#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "support.hpp"

using namespace k3lat;
using namespace k3lat::qform;

namespace {

DiagonalTernaryForm const kQ1{6, -2, -2};
DiagonalTernaryForm const kQ2{4, -4, -4};
DiagonalTernaryForm const kQ4{12, -4, -4};

bool sound(DiagonalTernaryForm const& f, RepresentationVerdict const& v) {
  return verify_verdict(QuadraticForm::from(f), v);
}

bool contains(std::vector<IntVector> const& zs, IntVector const& v) {
  return std::find(zs.begin(), zs.end(), v) != zs.end();
}

}  // namespace

TEST(TernaryZero, Examples) {
  auto const yes = ternary_represents_zero({1, 1, -2});
  ASSERT_TRUE(yes.is_yes());
  EXPECT_EQ(yes.witness, (IntVector{1, 1, 1}));

  for (auto const& q : {kQ1, kQ4}) {
    auto const no = ternary_represents_zero(q);
    ASSERT_TRUE(no.is_no());
    auto const& cert = std::get<LegendreCertificate>(*no.certificate);
    EXPECT_EQ(sign_normalized(cert.reduced), (IntVector{3, -1, -1}));
    EXPECT_EQ(cert.prime, 3);
    EXPECT_TRUE(sound(q, no));
  }
}

TEST(TernaryZero, DefiniteForms) {
  auto const v = ternary_represents_zero({1, 2, 3});
  ASSERT_TRUE(v.is_no());
  EXPECT_EQ(certificate_name(*v.certificate), "DEFINITE");
  EXPECT_TRUE(sound({1, 2, 3}, v));
}

TEST(TernaryRepresents, Examples) {
  for (auto const& q : {kQ2, kQ4}) {
    auto const v = ternary_represents(q, -2);
    ASSERT_TRUE(v.is_no());
    auto const& d = std::get<DivisibilityCertificate>(*v.certificate);
    EXPECT_EQ(d.divisor, 4);
    EXPECT_TRUE(sound(q, v));
  }
  for (int n : {1, 2, 4, 5, 7}) {
    DiagonalTernaryForm const q1{6 * n, -2, -2};
    auto const v = ternary_represents(q1, -2);
    ASSERT_TRUE(v.is_yes());
    EXPECT_EQ(v.witness, (IntVector{0, 1, 0}));
  }
  auto const q2 = ternary_represents_zero(kQ2);
  ASSERT_TRUE(q2.is_yes());
  EXPECT_EQ(q2.witness, (IntVector{1, 1, 0}));
  EXPECT_THROW(ternary_represents({0, 1, 1}, 1), Error);
}

TEST(PrimitiveZeros, Q2ContainsPythagoreanTriples) {
  auto const zs = enumerate_primitive_zeros(kQ2, 5);
  for (auto const& v : {IntVector{1, 1, 0}, IntVector{1, 0, 1}, IntVector{5, 3, 4},
                        IntVector{5, 4, 3}})
    EXPECT_TRUE(contains(zs, v));
  for (auto const& v : zs) {
    EXPECT_EQ(kQ2(v[0], v[1], v[2]), 0);
    EXPECT_EQ(gcd(v), 1);
    EXPECT_EQ(sign_normalized(v), v);
  }
  EXPECT_TRUE(std::is_sorted(zs.begin(), zs.end()));
}

TEST(PrimitiveZeros, Q1HasNone) {
  for (int h : {1, 5, 20, 60}) EXPECT_TRUE(enumerate_primitive_zeros(kQ1, h).empty());
}

TEST(PrimitiveZeros, Q2CountGrowsWithHeight) {
  std::size_t previous = 0;
  std::vector<std::size_t> counts;
  for (int h = 1; h <= 100; ++h) {
    auto const c = enumerate_primitive_zeros(kQ2, h).size();
    EXPECT_GE(c, previous);
    previous = c;
    if (h == 10 || h == 100) counts.push_back(c);
  }
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_LT(counts[0], counts[1]);
  EXPECT_GE(counts[0], 10u);
}

TEST(PrimitiveZeros, Q2CountAtHeight1000) {
  auto const c100 = enumerate_primitive_zeros(kQ2, 100).size();
  auto const c1000 = enumerate_primitive_zeros(kQ2, 1000).size();
  EXPECT_LT(c100, c1000);
}

TEST(PrimitiveZeros, MatchesBruteForce) {
  // Counting check against the brute oracle's existence search.
  for (int a = 1; a <= 6; ++a)
    for (int b = -6; b <= -1; ++b) {
      DiagonalTernaryForm const f{a, b, -1};
      bool const any = !enumerate_primitive_zeros(f, 30).empty();
      EXPECT_EQ(any, oracle::ternary_witness(a, b, -1, 0, 30).has_value())
          << a << "," << b << ",-1";
    }
}

TEST(Legendre, ReductionReachesNormalFormAndLifts) {
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b)
      for (int c = -10; c <= 10; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        auto const red = legendre_reduce({a, b, c});
        EXPECT_TRUE(is_legendre_normal(red.reduced));
        IntVector d{a, b, c};
        for (auto const& s : red.steps) ASSERT_TRUE(apply_legendre_step(s, d));
        EXPECT_EQ(d, red.reduced);
      }
}

// Every diagonal form with |d_i| <= 10 and every |t| <= 6 is decided
// soundly, and no NO contradicts the brute-force search over |x|,|y|,|z| <= 60.
TEST(TernaryOracle, ExhaustiveSweep) {
  long failures = 0;
  for (int a = -10; a <= 10; ++a)
    for (int b = a; b <= 10; ++b)
      for (int c = b; c <= 10; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        DiagonalTernaryForm const f{a, b, c};
        for (int t = -6; t <= 6; ++t) {
          auto const v = ternary_represents(f, t);
          bool ok = sound(f, v) && !v.is_undecided();
          if (v.is_no() && oracle::ternary_witness(a, b, c, t, 60)) ok = false;
          if (!ok) {
            ADD_FAILURE() << "(" << a << "," << b << "," << c << ") t=" << t << " "
                          << to_string(v.kind);
            ++failures;
          }
        }
      }
  EXPECT_EQ(failures, 0);
}

TEST(Verify, SpecExamples) {
  EXPECT_TRUE(verify_certificate(kQ2, -2, DivisibilityCertificate{4}));
  EXPECT_FALSE(verify_certificate(kQ2, 0, DivisibilityCertificate{4}));
  auto const no = ternary_represents_zero(kQ1);
  ASSERT_TRUE(no.is_no());
  EXPECT_TRUE(verify_certificate(kQ1, 0, *no.certificate));
}

TEST(Verify, TamperedLegendreCertificatesAreRejected) {
  auto const no = ternary_represents_zero(kQ1);
  auto const cert = std::get<LegendreCertificate>(*no.certificate);

  auto wrong_prime = cert;
  wrong_prime.prime = 5;
  EXPECT_FALSE(verify_certificate(kQ1, 0, wrong_prime));

  auto wrong_reduced = cert;
  wrong_reduced.reduced = {3, 1, -1};
  EXPECT_FALSE(verify_certificate(kQ1, 0, wrong_reduced));

  auto no_steps = cert;
  no_steps.steps.clear();
  EXPECT_FALSE(verify_certificate(kQ1, 0, no_steps));

  // Isotropic form, same certificate.
  EXPECT_FALSE(verify_certificate(kQ2, 0, cert));
  // Legendre certificates only speak about t = 0.
  EXPECT_FALSE(verify_certificate(kQ1, -2, cert));
}

TEST(Verify, OtherTamperedCertificates) {
  EXPECT_FALSE(verify_certificate(kQ2, -2, DivisibilityCertificate{3}));
  EXPECT_FALSE(verify_certificate(kQ2, -2, DivisibilityCertificate{1}));
  EXPECT_FALSE(verify_certificate(kQ1, 0, DefiniteCertificate{-1}));
  EXPECT_FALSE(verify_certificate(DiagonalTernaryForm{1, 1, 1}, 3,
                                  DefiniteCertificate{1}));
  EXPECT_TRUE(verify_certificate(DiagonalTernaryForm{1, 1, 1}, -3,
                                 DefiniteCertificate{1}));
  EXPECT_FALSE(verify_certificate(DiagonalTernaryForm{1, 1, 1}, 7,
                                  DefiniteBoxCertificate{{1, 1, 1}}));
  EXPECT_TRUE(verify_certificate(DiagonalTernaryForm{1, 1, 1}, 7,
                                 DefiniteBoxCertificate{{2, 2, 2}}));
  EXPECT_FALSE(verify_certificate(DiagonalTernaryForm{1, 1, 1}, 6,
                                  DefiniteBoxCertificate{{2, 2, 2}}));
}

TEST(Represents, GenericShapes) {
  // Non-diagonal ternary and rank-4 forms go through the generic path.
  auto const k3 = represents(k3_lattice(), -2);
  ASSERT_TRUE(k3.is_yes());
  EXPECT_EQ(k3_lattice().square(k3.witness), -2);

  auto const d4 = represents(direct_sum(hyperbolic_plane(), hyperbolic_plane()), 0);
  ASSERT_TRUE(d4.is_yes());

  auto const even = represents(e8_negative(), -3);
  ASSERT_TRUE(even.is_no());
  EXPECT_TRUE(verify_verdict(QuadraticForm::from_lattice(e8_negative()), even));

  auto const pos = represents(e8_negative(), 2);
  ASSERT_TRUE(pos.is_no());
  EXPECT_EQ(certificate_name(*pos.certificate), "DEFINITE");
}

TEST(Represents, TinyBoundsGiveUndecided) {
  SearchOptions opts;
  opts.sieve_moduli.clear();
  opts.search_bound = 1;
  // x^2 + y^2 - 7 z^2 = 11 has (3, 3, 1), outside radius 1.
  DiagonalTernaryForm const f{1, 1, -7};
  auto const v = ternary_represents(f, 11, opts);
  ASSERT_TRUE(v.is_undecided());
  ASSERT_TRUE(v.bounds);
  EXPECT_EQ(v.bounds->search_bound, 1);
  EXPECT_TRUE(ternary_represents(f, 11).is_yes());
}
