#include "berk/reduction.hpp"

#include <gtest/gtest.h>

#include "berk/errors.hpp"
#include "generators.hpp"

namespace berk {
namespace {

const Scalar kT = Scalar::t();
const FieldSpec kTAdic = FieldSpec::tadic();

ProjectiveClass cls(std::vector<Scalar> v, const FieldSpec& spec = kTAdic) {
  return ProjectiveClass(BerkPoint::type_one(std::move(v)), spec);
}

ResidueProjPoint rp(std::vector<Rational> v, const FieldSpec& spec = kTAdic) {
  return ResidueProjPoint(std::move(v), ResidueField::of(spec));
}

Poly witness3() {
  Poly x0 = Poly::variable(3, 0), x1 = Poly::variable(3, 1), x2 = Poly::variable(3, 2);
  return x1 * x1 * x1 - x0 * x1 * x2;
}

TEST(ReducePointTest, Examples) {
  EXPECT_EQ(reduce_point(cls({kT, kT * kT, Scalar(2) * kT}), kTAdic), ReducedTarget(rp({1, 0, 2})));
  EXPECT_EQ(reduce_point(cls({Scalar(1), Scalar(2) + kT, Scalar(4)}), kTAdic), ReducedTarget(rp({1, 2, 4})));
  EXPECT_EQ(reduce_point(ProjectiveClass(BerkPoint::gauss(3), kTAdic), kTAdic), ReducedTarget(GenericPoint{}));
  EXPECT_THROW(reduce_point(ProjectiveClass(BerkPoint::polydisc({Scalar(0), Scalar(0)}, {0, 1}), kTAdic), kTAdic),
               DomainError);
}

TEST(ReducePointTest, PadicExamples) {
  FieldSpec p3 = FieldSpec::padic(3);
  EXPECT_EQ(reduce_point(cls({Scalar(3), Scalar(1)}, p3), p3), ReducedTarget(rp({0, 1}, p3)));
  // (2 : 5) over F_3 is (1 : 5/2) = (1 : 1).
  EXPECT_EQ(reduce_point(cls({Scalar(2), Scalar(5)}, p3), p3), ReducedTarget(rp({1, 1}, p3)));
  EXPECT_EQ(reduce_point(cls({Scalar(Rational(1, 3)), Scalar(1)}, p3), p3), ReducedTarget(rp({1, 0}, p3)));
}

TEST(ResidueProjPointTest, CanonicalScaling) {
  EXPECT_EQ(rp({2, 4, 8}), rp({1, 2, 4}));
  EXPECT_EQ(rp({0, 3, 1}).coords(), (std::vector<Rational>{0, 1, Rational(1, 3)}));
  FieldSpec p5 = FieldSpec::padic(5);
  EXPECT_EQ(rp({2, 1}, p5).coords(), (std::vector<Rational>{1, 3}));
  EXPECT_THROW(rp({0, 0}), DomainError);
}

TEST(HypersurfaceTest, WitnessContainsReduction) {
  Hypersurface w(reduce_poly(witness3(), kTAdic));
  EXPECT_TRUE(in_hypersurface(rp({1, 2, 4}), w));
  EXPECT_FALSE(in_hypersurface(rp({1, 2, 3}), w));
  EXPECT_THROW(Hypersurface(ResiduePoly(2, ResidueField())), DomainError);
  ResiduePoly mixed(2, ResidueField());
  mixed.add_term({1, 0}, 1);
  mixed.add_term({0, 0}, 1);
  EXPECT_THROW(Hypersurface{mixed}, DomainError);
}

class ReductionLaws : public ::testing::TestWithParam<int> {
 protected:
  FieldSpec spec() const { return GetParam() == 0 ? kTAdic : FieldSpec::padic(5); }
};

TEST_P(ReductionLaws, RepresentativeIndependent) {
  FieldSpec sp = spec();
  testing::Gen gen(41 + GetParam());
  for (int i = 0; i < 200; ++i) {
    auto coords = gen.point(3, sp);
    Scalar b = gen.nonzero(sp);
    std::vector<Scalar> scaled;
    for (const auto& c : coords) scaled.push_back(b * c);
    EXPECT_EQ(reduce_point(cls(coords, sp), sp), reduce_point(cls(scaled, sp), sp));
  }
}

TEST_P(ReductionLaws, LambdaIsOneExactlyOffTheReducedHypersurface) {
  FieldSpec sp = spec();
  testing::Gen gen(51 + GetParam());
  int on = 0;
  for (int i = 0; i < 300; ++i) {
    Poly f = normalize(gen.homogeneous(3, static_cast<unsigned>(gen.integer(1, 3)), sp), sp).poly;
    std::vector<Scalar> coords = gen.point(3, sp);
    // Bias toward residue points on V(f~) by sometimes using a zero.
    if (gen.coin(3)) coords = {Scalar(0), Scalar(0), Scalar(1)};
    ProjectiveClass z = cls(coords, sp);
    Hypersurface w(reduce_poly(f, sp));
    bool inside = in_hypersurface(std::get<ResidueProjPoint>(reduce_point(z, sp)), w);
    on += inside;
    EXPECT_EQ(lambda(f, z, sp) == 1, !inside);
  }
  EXPECT_GT(on, 0);
}

INSTANTIATE_TEST_SUITE_P(BothKinds, ReductionLaws, ::testing::Values(0, 1));

}  // namespace
}  // namespace berk
