#include "berk/berkovich.hpp"

#include <algorithm>

#include "berk/errors.hpp"

namespace berk {

BerkPoint BerkPoint::type_one(std::vector<Scalar> coords) {
  if (std::all_of(coords.begin(), coords.end(), [](const Scalar& x) { return x.is_zero(); }))
    throw DomainError("AllZero", "type-I point needs a nonzero coordinate");
  return BerkPoint(TypeIPoint{std::move(coords)});
}

BerkPoint BerkPoint::polydisc(std::vector<Scalar> center, std::vector<std::int64_t> rho) {
  if (center.size() != rho.size())
    throw DomainError("ArityMismatch", "center and radius lengths differ");
  if (center.empty()) throw DomainError("ArityMismatch", "empty polydisc");
  return BerkPoint(PolydiscPoint{std::move(center), std::move(rho)});
}

BerkPoint BerkPoint::gauss(std::size_t nvars) {
  return polydisc(std::vector<Scalar>(nvars), std::vector<std::int64_t>(nvars, 0));
}

std::size_t BerkPoint::nvars() const {
  return is_type_one() ? as_type_one().coords.size() : as_polydisc().center.size();
}

const TypeIPoint& BerkPoint::as_type_one() const { return std::get<TypeIPoint>(data_); }
const PolydiscPoint& BerkPoint::as_polydisc() const { return std::get<PolydiscPoint>(data_); }

namespace {

void check_arity(const BerkPoint& zeta, const Poly& f) {
  if (zeta.nvars() != f.nvars())
    throw DomainError("ArityMismatch", "point and polynomial arities differ");
}

}  // namespace

Rational seminorm(const BerkPoint& zeta, const Poly& f, const FieldSpec& spec) {
  check_arity(zeta, f);
  if (zeta.is_type_one()) return abs_value(evaluate(f, zeta.as_type_one().coords), spec);

  const PolydiscPoint& disc = zeta.as_polydisc();
  bool centered = std::all_of(disc.center.begin(), disc.center.end(),
                              [](const Scalar& x) { return x.is_zero(); });
  Poly g = centered ? f : recenter(f, disc.center);
  // Work with valuations: the term b_a Y^a has valuation v(b_a) + sum rho_n a_n.
  std::optional<std::int64_t> best;
  for (const auto& [e, c] : g.terms()) {
    std::int64_t v = valuation(c, spec).value();
    for (std::size_t i = 0; i < e.size(); ++i) v += disc.rho[i] * static_cast<std::int64_t>(e[i]);
    if (!best || v < *best) best = v;
  }
  if (!best) return Rational(0);
  return abs_from_valuation(Valuation(*best), spec);
}

Rational sup_norm(const BerkPoint& zeta, const FieldSpec& spec) {
  Rational best(0);
  for (std::size_t n = 0; n < zeta.nvars(); ++n) {
    Rational v = seminorm(zeta, Poly::variable(zeta.nvars(), n), spec);
    if (v > best) best = v;
  }
  return best;
}

BerkPoint normalize_projective(const BerkPoint& zeta, const FieldSpec& spec) {
  if (!zeta.is_type_one())
    throw DomainError("UnsupportedPoint", "projective normalization needs a type-I point");
  const auto& coords = zeta.as_type_one().coords;
  std::size_t pick = coords.size();
  Valuation best = Valuation::infinity();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Valuation v = valuation(coords[i], spec);
    if (v < best) {
      best = v;
      pick = i;
    }
  }
  if (pick == coords.size()) throw DomainError("AllZero", "all coordinates vanish");
  const Scalar& b = coords[pick];
  if (b.is_one()) return zeta;
  std::vector<Scalar> out;
  out.reserve(coords.size());
  for (const auto& x : coords) out.push_back(x / b);
  return BerkPoint::type_one(std::move(out));
}

bool is_gauss_class(const BerkPoint& zeta, const FieldSpec& spec) {
  if (!zeta.is_polydisc()) return false;
  const auto& disc = zeta.as_polydisc();
  std::int64_t r = disc.rho.front();
  for (std::size_t i = 0; i < disc.rho.size(); ++i) {
    if (disc.rho[i] != r) return false;
    if (valuation(disc.center[i], spec) < Valuation(r)) return false;
  }
  return true;
}

ProjectiveClass::ProjectiveClass(BerkPoint rep, const FieldSpec& spec)
    : rep_(std::move(rep)), normalized_(sup_norm(rep_, spec) == 1) {}

Rational lambda(const Poly& f, const ProjectiveClass& z, const FieldSpec& spec) {
  if (f.is_zero()) throw DomainError("ZeroPolynomial", "lambda of the zero polynomial");
  auto deg = is_homogeneous(f);
  if (!deg) throw DomainError("NotHomogeneous", "lambda needs a homogeneous polynomial");
  Rational value = seminorm(z.representative(), f, spec);
  if (z.normalized() || value == 0) return value;
  Rational norm = sup_norm(z.representative(), spec);
  Rational denom(1);
  for (unsigned k = 0; k < *deg; ++k) denom *= norm;
  return value / denom;
}

bool points_equal(const ProjectiveClass& a, const ProjectiveClass& b, const FieldSpec& spec) {
  const auto& pa = a.representative();
  const auto& pb = b.representative();
  if (!pa.is_type_one() || !pb.is_type_one())
    throw DomainError("UnsupportedComparison",
                      "equivalence is only decided between type-I classes");
  if (pa.nvars() != pb.nvars()) throw DomainError("ArityMismatch", "different ambient spaces");
  const auto& x = pa.as_type_one().coords;
  const auto& y = pb.as_type_one().coords;
  for (const auto& c : x) check_member(c, spec);
  for (const auto& c : y) check_member(c, spec);
  std::size_t i = 0;
  while (x[i].is_zero()) ++i;
  if (y[i].is_zero()) return false;
  Scalar ratio = y[i] / x[i];
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!(y[k] == ratio * x[k])) return false;
  return true;
}

}  // namespace berk
