#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "berk/multdep.hpp"

namespace berk {

struct MultisetEntry {
  ProjectiveClass point;
  std::uint64_t multiplicity;
};

/// Finite multiset of points of P^N.
class Multiset {
 public:
  void add(ProjectiveClass z, std::uint64_t multiplicity = 1);
  const std::vector<MultisetEntry>& entries() const { return entries_; }
  std::uint64_t cardinality() const { return cardinality_; }

 private:
  std::vector<MultisetEntry> entries_;
  std::uint64_t cardinality_ = 0;
};

struct Atom {
  ProjectiveClass point;
  Rational weight;
};

/// Finitely supported probability measure on P^N.
class DiscreteMeasure {
 public:
  /// Throws DomainError("InvalidMeasure") unless weights are positive and
  /// sum to exactly 1.
  explicit DiscreteMeasure(std::vector<Atom> atoms);
  static DiscreteMeasure dirac(ProjectiveClass z);
  /// delta_gamma for the Gauss point of P^{nvars-1}.
  static DiscreteMeasure gauss(std::size_t nvars, const FieldSpec& spec);
  /// (1/|Z|) sum of delta_z, with multiplicity.
  static DiscreteMeasure uniform(const Multiset& z);

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Point (a_0 : ... : a_N) of the unit torus: every |a_n| = 1.
class TorusPoint {
 public:
  /// Throws DomainError("NotInTorus").
  TorusPoint(std::vector<Scalar> coords, const FieldSpec& spec);

  const std::vector<Scalar>& coords() const { return coords_; }
  std::size_t nvars() const { return coords_.size(); }
  /// Residue torus point (a_1/a_0, ..., a_N/a_0)~.
  ResidueTorusPoint residue(const FieldSpec& spec) const;
  TorusPoint power(std::int64_t j, const FieldSpec& spec) const;

 private:
  std::vector<Scalar> coords_;
};

struct FamilyMember {
  std::string id;
  Poly poly;
};

/// Finite set of normalized homogeneous test polynomials.
class TestFamily {
 public:
  /// Throws DomainError unless f is nonzero, homogeneous and of height 1.
  void add(std::string id, Poly f, const FieldSpec& spec);
  /// Normalizes f before adding it.
  void add_normalized(std::string id, const Poly& f, const FieldSpec& spec);
  bool contains(const Poly& f) const;
  const std::vector<FamilyMember>& members() const { return members_; }

 private:
  std::vector<FamilyMember> members_;
};

struct FamilyOptions {
  bool monomials = true;
  bool differences = true;
  bool scaled = true;  // c * X0 - X_n with c from the residue coordinates
  unsigned random_count = 4;
  std::uint64_t seed = 1;
};

/// Coordinate monomials, differences X_m - X_n, residue-scaled forms and
/// seeded pseudo-random height-1 forms of degree <= 3.
TestFamily default_family(const TorusPoint& a, const FieldSpec& spec,
                          const FamilyOptions& options = {});

Multiset powers_multiset(const TorusPoint& a, std::int64_t count, const FieldSpec& spec);

/// Average of lambda_f over Z with multiplicity.
Rational s_statistic(const Multiset& z, const Poly& f, const FieldSpec& spec);

/// Multiplicity-weighted count of members with lambda_f < t, for 0 < t <= 1.
std::uint64_t count_below(const Multiset& z, const Poly& f, const Rational& t,
                          const FieldSpec& spec);

Rational integrate_lambda(const DiscreteMeasure& mu, const Poly& f, const FieldSpec& spec);

/// X_1^{l_1+r}...X_N^{l_N+r} - X_0^l (X_1...X_N)^r with r = max(0, -min l_i)
/// and l = sum l_i, after flipping the relation's sign when l < 0.
Poly witness_polynomial(const Relation& rel);

struct WitnessCheck {
  Scalar a;         // prod a_i^{l_i} - 1
  Rational abs_a;
  bool ok;          // abs_a < 1
};

/// Throws DomainError("RelationNotSatisfiedAtResidue").
WitnessCheck witness_check(const TorusPoint& a, const Relation& rel, const FieldSpec& spec);

/// Fraction of Z (type-I members only) whose reduction lies in W.
Rational generic_fraction(const Multiset& z, const Hypersurface& w, const FieldSpec& spec);

// ------------------------------------------------------------ experiment

struct EvalMode {
  bool adaptive = false;
  std::size_t initial_precision = 8;
  std::size_t precision_cap = 4096;
};

/// Streams lambda_f(a^j) for j = 1, 2, ... using incremental monomial powers.
class OrbitLambda {
 public:
  OrbitLambda(const TorusPoint& a, const Poly& f, const FieldSpec& spec, EvalMode mode);
  ~OrbitLambda();
  OrbitLambda(OrbitLambda&&) noexcept;
  OrbitLambda& operator=(OrbitLambda&&) noexcept;

  /// lambda at the next index; the first call returns lambda_f(a).
  Rational next();

  class Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

enum class Verdict { kConsistentEquidistributed, kFailsWithWitness, kInconclusive };
std::string to_string(Verdict v);

struct RunOptions {
  std::int64_t lmax = 100;
  std::vector<std::int64_t> checkpoints;  // empty: lmax/8, lmax/4, lmax/2, lmax
  std::vector<Rational> thresholds = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  unsigned long factor_bound = kDefaultFactorBound;
  EvalMode mode;
  unsigned threads = 1;
};

struct SeriesPoint {
  std::int64_t l;
  Rational s;
  std::vector<std::uint64_t> counts;  // aligned with StatReport::count_thresholds
};

struct MemberReport {
  std::string id;
  Poly poly{1};
  std::vector<SeriesPoint> series;
  std::vector<std::int64_t> hits;  // j with lambda_f(a^j) < 1
};

struct WitnessData {
  Relation relation;
  Poly poly;
  WitnessCheck check;
};

struct StatReport {
  std::int64_t lmax = 0;
  std::vector<std::int64_t> checkpoints;
  /// Thresholds counted: 1, then the configured ones in decreasing order.
  std::vector<Rational> count_thresholds;
  std::vector<ResidueScalar> residue;
  std::vector<Relation> relations;
  std::optional<WitnessData> witness;
  std::vector<MemberReport> members;
  Verdict verdict = Verdict::kInconclusive;
};

std::vector<std::int64_t> default_checkpoints(std::int64_t lmax);

/// Powers experiment: reduces a, tests dependence, then tabulates S_l and
/// threshold counts for every family member (plus the witness, if any).
StatReport convergence_report(const TorusPoint& a, const TestFamily& family,
                              const RunOptions& options, const FieldSpec& spec);

}  // namespace berk
