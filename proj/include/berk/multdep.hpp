#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "berk/reduction.hpp"

namespace berk {

inline constexpr unsigned long kDefaultFactorBound = 1'000'000;

/// Point (a_1, ..., a_N) of the torus G_m^N over the residue field, i.e. the
/// affine coordinates of (1 : a_1 : ... : a_N).
class ResidueTorusPoint {
 public:
  /// Throws DomainError("NotInTorus") if a coordinate is zero.
  ResidueTorusPoint(std::vector<ResidueScalar> coords, ResidueField field);

  const std::vector<ResidueScalar>& coords() const { return coords_; }
  const ResidueField& field() const { return field_; }
  std::size_t dim() const { return coords_.size(); }

  /// prod a_i^{e_i}; throws DomainError("ArityMismatch").
  ResidueScalar monomial(const std::vector<std::int64_t>& e) const;
  /// Coordinate-wise k-th power.
  ResidueTorusPoint power(std::int64_t k) const;

 private:
  std::vector<ResidueScalar> coords_;
  ResidueField field_;
};

/// Nonzero exponent vector with prod a_i^{l_i} = 1, checked on creation.
class Relation {
 public:
  /// Throws DomainError("RelationNotSatisfied") or ("ZeroRelation").
  static Relation certify(std::vector<std::int64_t> exponents, const ResidueTorusPoint& a);

  const std::vector<std::int64_t>& exponents() const { return exps_; }
  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  explicit Relation(std::vector<std::int64_t> e) : exps_(std::move(e)) {}
  std::vector<std::int64_t> exps_;
};

struct FactorSignature {
  int sign = 1;
  std::map<Integer, std::int64_t> exponents;
  friend bool operator==(const FactorSignature&, const FactorSignature&) = default;
};

/// Trial division by primes <= bound; throws FactorBoundExceeded when a
/// cofactor above 1 survives.
FactorSignature factor_rational(const Rational& q, unsigned long bound = kDefaultFactorBound);

/// Hermite basis of the relation lattice {l : prod a_i^{l_i} = 1}. Empty iff
/// the coordinates are multiplicatively independent.
std::vector<Relation> relation_basis(const ResidueTorusPoint& a,
                                     unsigned long bound = kDefaultFactorBound);

bool is_nondegenerate(const ResidueTorusPoint& a, unsigned long bound = kDefaultFactorBound);

/// Membership in G_Lambda for the lattice spanned by `basis`.
bool subgroup_member(const ResidueTorusPoint& a,
                     const std::vector<std::vector<std::int64_t>>& basis);

/// Indices j in [1, jmax] with f~(1, a_1^j, ..., a_N^j) = 0.
std::vector<std::int64_t> orbit_hits(const ResidueTorusPoint& a, const Hypersurface& w,
                                     std::int64_t jmax);

}  // namespace berk
