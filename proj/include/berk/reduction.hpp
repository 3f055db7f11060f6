#pragma once

#include <variant>
#include <vector>

#include "berk/berkovich.hpp"

namespace berk {

/// Point of P^N over the residue field, scaled so that its first nonzero
/// coordinate is 1.
class ResidueProjPoint {
 public:
  /// Rescales to canonical form; throws DomainError("AllZero").
  ResidueProjPoint(std::vector<ResidueScalar> coords, const ResidueField& field);
  const std::vector<ResidueScalar>& coords() const { return coords_; }
  std::size_t nvars() const { return coords_.size(); }
  friend bool operator==(const ResidueProjPoint&, const ResidueProjPoint&) = default;
  friend auto operator<=>(const ResidueProjPoint& a, const ResidueProjPoint& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  std::vector<ResidueScalar> coords_;
};

/// Generic point of the residue projective space.
struct GenericPoint {
  friend bool operator==(const GenericPoint&, const GenericPoint&) = default;
};

using ReducedTarget = std::variant<ResidueProjPoint, GenericPoint>;

/// V(f~) for a nonzero homogeneous residue polynomial.
class Hypersurface {
 public:
  explicit Hypersurface(ResiduePoly f);
  const ResiduePoly& equation() const { return f_; }

 private:
  ResiduePoly f_;
};

/// Reduction map: type-I classes reduce coordinate-wise after normalizing;
/// the Gauss class reduces to the generic point.
ReducedTarget reduce_point(const ProjectiveClass& z, const FieldSpec& spec);

bool in_hypersurface(const ResidueProjPoint& p, const Hypersurface& w);

}  // namespace berk
