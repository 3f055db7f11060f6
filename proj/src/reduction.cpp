#include "berk/reduction.hpp"

#include "berk/errors.hpp"

namespace berk {

ResidueProjPoint::ResidueProjPoint(std::vector<ResidueScalar> coords,
                                   const ResidueField& field)
    : coords_(std::move(coords)) {
  std::size_t i = 0;
  while (i < coords_.size() && coords_[i] == 0) ++i;
  if (i == coords_.size()) throw DomainError("AllZero", "residue point with no nonzero coordinate");
  ResidueScalar s = field.inv(coords_[i]);
  for (auto& c : coords_) c = field.mul(c, s);
}

Hypersurface::Hypersurface(ResiduePoly f) : f_(std::move(f)) {
  if (f_.is_zero()) throw DomainError("ZeroPolynomial", "hypersurface of the zero polynomial");
  if (!f_.homogeneous_degree())
    throw DomainError("NotHomogeneous", "hypersurface equation must be homogeneous");
}

ReducedTarget reduce_point(const ProjectiveClass& z, const FieldSpec& spec) {
  const BerkPoint& rep = z.representative();
  if (rep.is_polydisc()) {
    if (is_gauss_class(rep, spec)) return GenericPoint{};
    throw DomainError("UnsupportedPoint", "reduction of a non-Gauss polydisc point");
  }
  BerkPoint unit = normalize_projective(rep, spec);
  std::vector<ResidueScalar> coords;
  for (const auto& x : unit.as_type_one().coords) coords.push_back(reduce_scalar(x, spec));
  return ResidueProjPoint(std::move(coords), ResidueField::of(spec));
}

bool in_hypersurface(const ResidueProjPoint& p, const Hypersurface& w) {
  return w.equation().evaluate(p.coords()) == 0;
}

}  // namespace berk
