#include "berk/multdep.hpp"

#include <gtest/gtest.h>

#include "berk/equidist.hpp"
#include "berk/errors.hpp"
#include "generators.hpp"

namespace berk {
namespace {

using Vec = std::vector<std::int64_t>;

ResidueTorusPoint q_point(std::vector<Rational> v) { return ResidueTorusPoint(std::move(v), ResidueField()); }
ResidueTorusPoint fp_point(std::vector<Rational> v, unsigned long p) {
  return ResidueTorusPoint(std::move(v), ResidueField(p));
}

std::vector<Vec> exps(const std::vector<Relation>& rels) {
  std::vector<Vec> out;
  for (const auto& r : rels) out.push_back(r.exponents());
  return out;
}

// Reduces v against a Hermite basis; zero remainder means v is in the span.
bool in_span(Vec v, const std::vector<Vec>& basis) {
  for (const auto& row : basis) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    for (std::size_t k = 0; k < c; ++k)
      if (v[k] != 0) return false;
    if (v[c] % row[c] != 0) return false;
    std::int64_t m = v[c] / row[c];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= m * row[k];
  }
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

// Every nonzero l with max|l_i| <= box and prod a_i^{l_i} = 1.
std::vector<Vec> box_relations(const ResidueTorusPoint& a, std::int64_t box) {
  std::vector<Vec> out;
  Vec l(a.dim(), -box);
  for (;;) {
    bool nonzero = false;
    for (auto x : l) nonzero |= x != 0;
    if (nonzero && a.monomial(l) == 1) out.push_back(l);
    std::size_t i = 0;
    while (i < l.size() && l[i] == box) l[i++] = -box;
    if (i == l.size()) break;
    ++l[i];
  }
  return out;
}

TEST(FactorRationalTest, Examples) {
  FactorSignature s = factor_rational(Rational(-12, 5));
  EXPECT_EQ(s.sign, -1);
  EXPECT_EQ(s.exponents, (std::map<Integer, std::int64_t>{{2, 2}, {3, 1}, {5, -1}}));
  EXPECT_EQ(factor_rational(Rational(1)), FactorSignature{});
  EXPECT_THROW(factor_rational(Rational(91), 5), FactorBoundExceeded);
  EXPECT_EQ(factor_rational(Rational(91), 13).exponents, (std::map<Integer, std::int64_t>{{7, 1}, {13, 1}}));
  EXPECT_THROW(factor_rational(Rational(0)), DomainError);
}

TEST(FactorRationalTest, Reconstructs) {
  testing::Gen gen(3);
  for (int i = 0; i < 300; ++i) {
    Rational q(Integer(gen.integer(-5000, 5000)), Integer(gen.integer(1, 5000)));
    q.canonicalize();
    if (q == 0) continue;
    FactorSignature s = factor_rational(q, 5000);
    Rational back(s.sign);
    for (const auto& [prime, e] : s.exponents) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
      back *= e < 0 ? Rational(1, pe) : Rational(pe);
    }
    EXPECT_EQ(back, q);
  }
}

TEST(RelationBasisTest, Examples) {
  EXPECT_EQ(exps(relation_basis(q_point({2, 4}))), (std::vector<Vec>{{2, -1}}));
  EXPECT_TRUE(relation_basis(q_point({2, 3})).empty());
  EXPECT_EQ(exps(relation_basis(q_point({2, -2}))), (std::vector<Vec>{{2, -2}}));
  EXPECT_EQ(exps(relation_basis(q_point({-1}))), (std::vector<Vec>{{2}}));
  EXPECT_EQ(exps(relation_basis(q_point({1, 5}))), (std::vector<Vec>{{1, 0}}));
  EXPECT_THROW(relation_basis(q_point({Rational(91), 2}), 5), FactorBoundExceeded);
}

TEST(RelationBasisTest, FiniteFieldExamples) {
  EXPECT_EQ(exps(relation_basis(fp_point({3}, 7))), (std::vector<Vec>{{6}}));
  EXPECT_EQ(exps(relation_basis(fp_point({6}, 7))), (std::vector<Vec>{{2}}));
  // 2 = 3^2 in F_7, so 3^2 * 2^-1 = 1 lies in the lattice.
  std::vector<Vec> basis = exps(relation_basis(fp_point({3, 2}, 7)));
  EXPECT_TRUE(in_span({2, -1}, basis));
  EXPECT_TRUE(in_span({6, 0}, basis));
  EXPECT_FALSE(in_span({1, 0}, basis));
}

TEST(RelationCertifyTest, RejectsBadVectors) {
  ResidueTorusPoint a = q_point({2, 4});
  EXPECT_NO_THROW(Relation::certify({-2, 1}, a));
  EXPECT_THROW(Relation::certify({1, -1}, a), DomainError);
  EXPECT_THROW(Relation::certify({0, 0}, a), DomainError);
  EXPECT_THROW(Relation::certify({1}, a), DomainError);
  EXPECT_THROW(q_point({2, 0}), DomainError);
}

TEST(NondegenerateTest, Examples) {
  EXPECT_TRUE(is_nondegenerate(q_point({2, 3})));
  EXPECT_FALSE(is_nondegenerate(q_point({2, 4})));
  EXPECT_FALSE(is_nondegenerate(fp_point({3}, 7)));
}

TEST(SubgroupMemberTest, Examples) {
  EXPECT_TRUE(subgroup_member(q_point({2, 4}), {{2, -1}}));
  EXPECT_FALSE(subgroup_member(q_point({2, 3}), {{2, -1}}));
  EXPECT_TRUE(subgroup_member(q_point({7, Rational(1, 3)}), {}));
  EXPECT_THROW(subgroup_member(q_point({2, 4}), {{1}}), DomainError);
}

ResiduePoly rpoly(std::size_t n, std::vector<std::pair<Exponents, Rational>> terms) {
  ResiduePoly f(n, ResidueField());
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

TEST(OrbitHitsTest, Examples) {
  ResidueTorusPoint a = q_point({2, 3});
  EXPECT_TRUE(orbit_hits(a, Hypersurface(rpoly(3, {{{1, 0, 0}, 1}, {{0, 1, 0}, -1}})), 100).empty());
  EXPECT_EQ(orbit_hits(a, Hypersurface(rpoly(3, {{{1, 0, 0}, 2}, {{0, 1, 0}, -1}})), 100), (Vec{1}));
  Vec all;
  for (std::int64_t j = 1; j <= 50; ++j) all.push_back(j);
  EXPECT_EQ(orbit_hits(q_point({2, 4}), Hypersurface(rpoly(3, {{{0, 2, 0}, 1}, {{1, 0, 1}, -1}})), 50), all);
  EXPECT_THROW(orbit_hits(a, Hypersurface(rpoly(2, {{{1, 0}, 1}})), 5), DomainError);
}

TEST(OrbitHitsTest, MatchesBruteForce) {
  ResidueTorusPoint a = q_point({Rational(-2), Rational(1, 2)});
  // X1 + X0 vanishes at odd j, X1 * X2 - X0^2 at even j.
  Hypersurface w(rpoly(3, {{{0, 1, 0}, 1}, {{1, 0, 0}, 1}}));
  Vec expect;
  for (std::int64_t j = 1; j <= 40; ++j) {
    Rational x(1);
    for (std::int64_t k = 0; k < j; ++k) x *= -2;
    if (x + 1 == 0) expect.push_back(j);
  }
  EXPECT_EQ(orbit_hits(a, w, 40), expect);
  Vec even;
  for (std::int64_t j = 2; j <= 40; j += 2) even.push_back(j);
  EXPECT_EQ(orbit_hits(a, Hypersurface(rpoly(3, {{{0, 1, 1}, 1}, {{2, 0, 0}, -1}})), 40), even);
}

// Random point of Q^N built from {2,3,5} with exponents in [-2,2] and a sign.
ResidueTorusPoint smooth_point(testing::Gen& gen) {
  std::size_t n = static_cast<std::size_t>(gen.integer(1, 3));
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < n; ++i) {
    Rational x(gen.coin() ? -1 : 1);
    for (int prime : {2, 3, 5}) {
      long e = gen.integer(-2, 2);
      for (long k = 0; k < (e < 0 ? -e : e); ++k) x = e < 0 ? Rational(x / prime) : Rational(x * prime);
    }
    coords.push_back(x);
  }
  return q_point(std::move(coords));
}

TEST(RelationBasisTest, AgreesWithBoxSearch) {
  testing::Gen gen(101);
  int degenerate = 0;
  for (int i = 0; i < 100; ++i) {
    ResidueTorusPoint a = smooth_point(gen);
    std::vector<Vec> basis = exps(relation_basis(a));
    std::vector<Vec> box = box_relations(a, 5);
    if (!box.empty()) EXPECT_FALSE(basis.empty());
    // Minimal relations can leave the small box (e.g. (8, 2, -6) for
    // (2/225, 900, -4/225)); entries of 2x2 minors, doubled for the sign,
    // stay within 16 for this input distribution.
    if (box.empty()) EXPECT_EQ(basis.empty(), box_relations(a, 16).empty()) << ::testing::PrintToString(a.coords());
    for (const auto& l : box) EXPECT_TRUE(in_span(l, basis));
    for (const auto& l : basis) EXPECT_EQ(a.monomial(l), 1);
    degenerate += !basis.empty();
  }
  EXPECT_GT(degenerate, 0);
}

TEST(RelationBasisTest, FiniteFieldAgreesWithBoxSearch) {
  testing::Gen gen(103);
  for (unsigned long p : {5ul, 7ul, 11ul}) {
    for (int i = 0; i < 20; ++i) {
      std::size_t n = static_cast<std::size_t>(gen.integer(1, 2));
      std::vector<Rational> coords;
      for (std::size_t k = 0; k < n; ++k) coords.emplace_back(gen.integer(1, static_cast<long>(p) - 1));
      ResidueTorusPoint a = fp_point(coords, p);
      std::vector<Vec> basis = exps(relation_basis(a));
      EXPECT_EQ(basis.size(), n);
      for (const auto& l : box_relations(a, static_cast<std::int64_t>(p))) EXPECT_TRUE(in_span(l, basis));
      for (const auto& l : basis) EXPECT_EQ(a.monomial(l), 1);
    }
  }
}

TEST(RelationBasisTest, PowerStability) {
  testing::Gen gen(107);
  for (int i = 0; i < 100; ++i) {
    ResidueTorusPoint a = smooth_point(gen);
    bool deg = !is_nondegenerate(a);
    for (std::int64_t k : {2, 3}) EXPECT_EQ(!is_nondegenerate(a.power(k)), deg);
  }
}

TEST(OrbitHitsTest, StableOnDefaultFamily) {
  FieldSpec spec = FieldSpec::tadic();
  Scalar t = Scalar::t();
  TorusPoint a({Scalar(1), Scalar(2) + t, Scalar(3) - t}, spec);
  ResidueTorusPoint ra = a.residue(spec);
  ASSERT_TRUE(is_nondegenerate(ra));
  TestFamily family = default_family(a, spec);
  for (const auto& m : family.members()) {
    Hypersurface w(reduce_poly(m.poly, spec));
    EXPECT_EQ(orbit_hits(ra, w, 250).size(), orbit_hits(ra, w, 500).size()) << m.id;
  }
}

}  // namespace
}  // namespace berk
