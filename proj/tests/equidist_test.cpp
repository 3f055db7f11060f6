#include "berk/equidist.hpp"

#include <gtest/gtest.h>

#include "berk/errors.hpp"
#include "generators.hpp"

namespace berk {
namespace {

const Scalar kT = Scalar::t();
const FieldSpec kTAdic = FieldSpec::tadic();

Poly X(std::size_t i) { return Poly::variable(3, i); }
Poly X2(std::size_t i) { return Poly::variable(2, i); }
Poly witness3() { return X(1) * X(1) * X(1) - X(0) * X(1) * X(2); }

TorusPoint degenerate() { return TorusPoint({Scalar(1), Scalar(2) + kT, Scalar(4)}, kTAdic); }
TorusPoint generic() { return TorusPoint({Scalar(1), Scalar(2) + kT, Scalar(3) - kT}, kTAdic); }
ProjectiveClass cls(std::vector<Scalar> v) { return ProjectiveClass(BerkPoint::type_one(std::move(v)), kTAdic); }

TEST(TorusPointTest, RejectsNonUnits) {
  EXPECT_THROW(TorusPoint({Scalar(1), kT}, kTAdic), DomainError);
  EXPECT_THROW(TorusPoint({Scalar(1), Scalar(1) / kT}, kTAdic), DomainError);
  FieldSpec p3 = FieldSpec::padic(3);
  EXPECT_THROW(TorusPoint({Scalar(1), Scalar(6)}, p3), DomainError);
  EXPECT_NO_THROW(TorusPoint({Scalar(1), Scalar(Rational(2, 5))}, p3));
}

TEST(PowersMultisetTest, Examples) {
  Multiset z = powers_multiset(degenerate(), 2, kTAdic);
  ASSERT_EQ(z.cardinality(), 2u);
  EXPECT_EQ(z.entries()[0].point.representative(), BerkPoint::type_one({Scalar(1), Scalar(2) + kT, Scalar(4)}));
  EXPECT_EQ(z.entries()[1].point.representative(),
            BerkPoint::type_one({Scalar(1), (Scalar(2) + kT) * (Scalar(2) + kT), Scalar(16)}));
  EXPECT_EQ(powers_multiset(degenerate(), 1, kTAdic).cardinality(), 1u);
  Multiset ones = powers_multiset(TorusPoint({Scalar(1), Scalar(1)}, kTAdic), 7, kTAdic);
  EXPECT_EQ(ones.cardinality(), 7u);
  for (const auto& e : ones.entries())
    EXPECT_EQ(e.point.representative(), BerkPoint::type_one({Scalar(1), Scalar(1)}));
}

TEST(SStatisticTest, Examples) {
  EXPECT_EQ(s_statistic(powers_multiset(degenerate(), 4, kTAdic), witness3(), kTAdic), Rational(1, 2));
  Multiset z100 = powers_multiset(generic(), 100, kTAdic);
  EXPECT_EQ(s_statistic(z100, X(0) - X(1), kTAdic), 1);
  EXPECT_EQ(s_statistic(z100, Poly::constant(3, Scalar(2)) * X(0) - X(1), kTAdic), Rational(199, 200));
  EXPECT_THROW(s_statistic(Multiset{}, X(0), kTAdic), DomainError);
  EXPECT_THROW(s_statistic(z100, Poly::constant(3, kT) * X(0), kTAdic), DomainError);
}

TEST(CountBelowTest, Examples) {
  Multiset z100 = powers_multiset(generic(), 100, kTAdic);
  Poly f = Poly::constant(3, Scalar(2)) * X(0) - X(1);
  EXPECT_EQ(count_below(z100, f, Rational(3, 4), kTAdic), 1u);
  EXPECT_EQ(count_below(z100, f, Rational(1, 4), kTAdic), 0u);
  EXPECT_EQ(count_below(powers_multiset(degenerate(), 50, kTAdic), witness3(), Rational(3, 4), kTAdic), 50u);
  EXPECT_THROW(count_below(z100, f, Rational(0), kTAdic), DomainError);
  EXPECT_THROW(count_below(z100, f, Rational(5, 4), kTAdic), DomainError);
}

TEST(IntegrateLambdaTest, Examples) {
  EXPECT_EQ(integrate_lambda(DiscreteMeasure::gauss(3, kTAdic), witness3(), kTAdic), 1);
  DiscreteMeasure mu({{ProjectiveClass(BerkPoint::gauss(2), kTAdic), Rational(1, 2)},
                      {cls({Scalar(1), kT}), Rational(1, 2)}});
  EXPECT_EQ(integrate_lambda(mu, X2(1), kTAdic), Rational(3, 4));
  ProjectiveClass z = cls({Scalar(1), Scalar(2) + kT, Scalar(4)});
  Multiset single;
  single.add(z);
  EXPECT_EQ(integrate_lambda(DiscreteMeasure::uniform(single), witness3(), kTAdic), lambda(witness3(), z, kTAdic));
  EXPECT_THROW(DiscreteMeasure({{z, Rational(1, 2)}}), DomainError);
}

TEST(WitnessPolynomialTest, Examples) {
  ResidueTorusPoint a24({2, 4}, ResidueField());
  EXPECT_EQ(witness_polynomial(Relation::certify({2, -1}, a24)), witness3());
  EXPECT_EQ(witness_polynomial(Relation::certify({-2, 1}, a24)), witness3());
  ResidueTorusPoint a11({1, 1}, ResidueField());
  EXPECT_EQ(witness_polynomial(Relation::certify({1, -1}, a11)), X(1) * X(1) - X(1) * X(2));
}

TEST(WitnessCheckTest, Examples) {
  ResidueTorusPoint a24({2, 4}, ResidueField());
  Relation rel = Relation::certify({2, -1}, a24);
  WitnessCheck w = witness_check(degenerate(), rel, kTAdic);
  EXPECT_EQ(w.a, (Scalar(4) * kT + kT * kT) / Scalar(4));
  EXPECT_EQ(w.abs_a, Rational(1, 2));
  EXPECT_TRUE(w.ok);
  WitnessCheck exact = witness_check(TorusPoint({Scalar(1), Scalar(2), Scalar(4)}, kTAdic), rel, kTAdic);
  EXPECT_TRUE(exact.a.is_zero());
  EXPECT_EQ(exact.abs_a, 0);
  EXPECT_TRUE(exact.ok);
  try {
    witness_check(TorusPoint({Scalar(1), Scalar(2) + kT, Scalar(3)}, kTAdic), rel, kTAdic);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.tag(), "RelationNotSatisfiedAtResidue");
  }
}

Hypersurface hyp(const Poly& f) { return Hypersurface(reduce_poly(f, kTAdic)); }

TEST(GenericFractionTest, Examples) {
  Multiset z100 = powers_multiset(generic(), 100, kTAdic);
  EXPECT_EQ(generic_fraction(z100, hyp(Poly::constant(3, Scalar(2)) * X(0) - X(1)), kTAdic), Rational(1, 100));
  EXPECT_EQ(generic_fraction(z100, hyp(X(0) - X(1)), kTAdic), 0);
  Multiset one;
  one.add(cls({Scalar(1), Scalar(2), Scalar(4)}));
  EXPECT_EQ(generic_fraction(one, hyp(witness3()), kTAdic), 1);
  Multiset gauss;
  gauss.add(ProjectiveClass(BerkPoint::gauss(3), kTAdic));
  EXPECT_THROW(generic_fraction(gauss, hyp(witness3()), kTAdic), DomainError);
}

TEST(DefaultFamilyTest, MembersAreNormalizedAndDistinct) {
  TestFamily fam = default_family(generic(), kTAdic);
  std::set<std::string> ids;
  for (const auto& m : fam.members()) {
    EXPECT_TRUE(ids.insert(m.id).second);
    EXPECT_EQ(height(m.poly, kTAdic), 1);
    EXPECT_TRUE(is_homogeneous(m.poly).has_value());
    EXPECT_EQ(integrate_lambda(DiscreteMeasure::gauss(3, kTAdic), m.poly, kTAdic), 1);
  }
  EXPECT_TRUE(fam.contains(X(0) - X(1)));
  EXPECT_TRUE(fam.contains(Poly::constant(3, Scalar(2)) * X(0) - X(1)));
  TestFamily again = default_family(generic(), kTAdic);
  ASSERT_EQ(again.members().size(), fam.members().size());
  for (std::size_t i = 0; i < fam.members().size(); ++i) EXPECT_EQ(again.members()[i].poly, fam.members()[i].poly);
}

class StatisticLaws : public ::testing::TestWithParam<int> {
 protected:
  FieldSpec spec() const { return GetParam() == 0 ? kTAdic : FieldSpec::padic(3); }
  TorusPoint random_torus(testing::Gen& gen) {
    FieldSpec sp = spec();
    std::vector<Scalar> v;
    while (v.size() < 3) {
      Scalar x = gen.nonzero(sp);
      if (valuation(x, sp) == Valuation(0)) v.push_back(x);
    }
    return TorusPoint(std::move(v), sp);
  }
};

TEST_P(StatisticLaws, IdentityInequalityBridgeAndMonotonicity) {
  FieldSpec sp = spec();
  testing::Gen gen(61 + GetParam());
  for (int run = 0; run < 6; ++run) {
    TorusPoint a = random_torus(gen);
    Poly f = normalize(gen.homogeneous(3, static_cast<unsigned>(gen.integer(1, 2)), sp), sp).poly;
    Multiset z = powers_multiset(a, 12, sp);
    Rational s = s_statistic(z, f, sp);
    EXPECT_GE(s, 0);
    EXPECT_LE(s, 1);
    Rational deficit(0);
    for (const auto& e : z.entries()) {
      Rational l = lambda(f, e.point, sp);
      if (l < 1) deficit += 1 - l;
    }
    EXPECT_EQ(s, 1 - deficit / Rational(static_cast<long>(z.cardinality())));
    for (const Rational& t : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      Rational c(static_cast<long>(count_below(z, f, t, sp)));
      EXPECT_GE(s, t * (1 - c / 12));
    }
    ResiduePoly fr = reduce_poly(f, sp);
    if (!fr.is_zero())
      EXPECT_EQ(Rational(static_cast<long>(count_below(z, f, Rational(1), sp))),
                Rational(12) * generic_fraction(z, Hypersurface(fr), sp));
    std::uint64_t prev = 0;
    for (std::int64_t l = 1; l <= 12; ++l) {
      std::uint64_t c = count_below(powers_multiset(a, l, sp), f, Rational(1, 2), sp);
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST_P(StatisticLaws, AdaptiveOrbitMatchesExact) {
  FieldSpec sp = spec();
  testing::Gen gen(71 + GetParam());
  for (int run = 0; run < 8; ++run) {
    TorusPoint a = random_torus(gen);
    Poly f = normalize(gen.homogeneous(3, static_cast<unsigned>(gen.integer(1, 3)), sp), sp).poly;
    OrbitLambda exact(a, f, sp, EvalMode{});
    OrbitLambda fast(a, f, sp, EvalMode{true, 4, 4096});
    Multiset z = powers_multiset(a, 30, sp);
    for (const auto& e : z.entries()) {
      Rational l = exact.next();
      EXPECT_EQ(l, lambda(f, e.point, sp));
      EXPECT_EQ(fast.next(), l);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(BothKinds, StatisticLaws, ::testing::Values(0, 1));

TEST(OrbitLambdaTest, PrecisionCapExceeded) {
  // a^j stays at valuation 0 but X1 - X2 vanishes to order j at a^j.
  TorusPoint a({Scalar(1), Scalar(1) + kT, Scalar(1) + kT + kT * kT}, kTAdic);
  Poly f = X(1) - X(2);
  OrbitLambda fast(a, f, kTAdic, EvalMode{true, 2, 4});
  // j = 1: X1 - X2 = -t^2, so lambda = 1/4 needs precision 3 > 2 but <= 4.
  EXPECT_EQ(fast.next(), Rational(1, 4));
  TorusPoint b({Scalar(1), Scalar(1), Scalar(1) + kT.pow(6) / (Scalar(1) - kT)}, kTAdic);
  OrbitLambda capped(b, f, kTAdic, EvalMode{true, 2, 4});
  EXPECT_THROW(capped.next(), PrecisionCapExceeded);
}

TEST(ConvergenceReportTest, Degenerate) {
  TorusPoint a = degenerate();
  RunOptions opt;
  opt.lmax = 200;
  opt.checkpoints = {10, 50, 100, 200};
  StatReport r = convergence_report(a, default_family(a, kTAdic), opt, kTAdic);
  EXPECT_EQ(r.verdict, Verdict::kFailsWithWitness);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->relation.exponents(), (std::vector<std::int64_t>{2, -1}));
  EXPECT_EQ(r.witness->poly, witness3());
  EXPECT_EQ(r.witness->check.abs_a, Rational(1, 2));
  const MemberReport& w = r.members.back();
  EXPECT_EQ(w.poly, witness3());
  ASSERT_EQ(w.series.size(), 4u);
  for (const auto& p : w.series) EXPECT_EQ(p.s, Rational(1, 2));
}

TEST(ConvergenceReportTest, Neutral) {
  TorusPoint a({Scalar(1), Scalar(1), Scalar(1)}, kTAdic);
  RunOptions opt;
  opt.lmax = 10;
  StatReport r = convergence_report(a, default_family(a, kTAdic), opt, kTAdic);
  EXPECT_EQ(r.verdict, Verdict::kFailsWithWitness);
  EXPECT_EQ(r.checkpoints, default_checkpoints(10));
}

TEST(ConvergenceReportTest, GenericAdaptiveAndThreaded) {
  TorusPoint a = generic();
  TestFamily fam = default_family(a, kTAdic);
  RunOptions opt;
  opt.lmax = 120;
  opt.checkpoints = {30, 60, 90, 120};
  StatReport base = convergence_report(a, fam, opt, kTAdic);
  EXPECT_EQ(base.verdict, Verdict::kConsistentEquidistributed);
  EXPECT_TRUE(base.relations.empty());
  EXPECT_FALSE(base.witness.has_value());
  opt.mode.adaptive = true;
  opt.threads = 3;
  StatReport fast = convergence_report(a, fam, opt, kTAdic);
  ASSERT_EQ(fast.members.size(), base.members.size());
  for (std::size_t i = 0; i < base.members.size(); ++i) {
    EXPECT_EQ(fast.members[i].hits, base.members[i].hits);
    for (std::size_t k = 0; k < base.members[i].series.size(); ++k) {
      EXPECT_EQ(fast.members[i].series[k].s, base.members[i].series[k].s);
      EXPECT_EQ(fast.members[i].series[k].counts, base.members[i].series[k].counts);
    }
  }
}

TEST(ConvergenceReportTest, Checkpoints) {
  EXPECT_EQ(default_checkpoints(500), (std::vector<std::int64_t>{62, 125, 250, 500}));
  TorusPoint a = generic();
  RunOptions opt;
  opt.lmax = 10;
  opt.checkpoints = {5, 20};
  EXPECT_THROW(convergence_report(a, default_family(a, kTAdic), opt, kTAdic), DomainError);
  opt.checkpoints = {8, 4};
  EXPECT_THROW(convergence_report(a, default_family(a, kTAdic), opt, kTAdic), DomainError);
}

}  // namespace
}  // namespace berk
