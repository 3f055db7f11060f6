#pragma once

#include <variant>
#include <vector>

#include "berk/polynomial.hpp"

namespace berk {

/// Evaluation seminorm f -> |f(a)| at a K-rational coordinate tuple.
struct TypeIPoint {
  std::vector<Scalar> coords;
  friend bool operator==(const TypeIPoint&, const TypeIPoint&) = default;
};

/// Sup seminorm over the polydisc of the given center and radii
/// r_n = c^(-rho_n).
struct PolydiscPoint {
  std::vector<Scalar> center;
  std::vector<std::int64_t> rho;
  friend bool operator==(const PolydiscPoint&, const PolydiscPoint&) = default;
};

/// A supported point of Berkovich affine space A^{N+1}.
class BerkPoint {
 public:
  /// Throws DomainError("AllZero") when every coordinate vanishes.
  static BerkPoint type_one(std::vector<Scalar> coords);
  static BerkPoint polydisc(std::vector<Scalar> center, std::vector<std::int64_t> rho);
  /// The polydisc at the origin with all radii 1.
  static BerkPoint gauss(std::size_t nvars);

  std::size_t nvars() const;
  bool is_type_one() const { return std::holds_alternative<TypeIPoint>(data_); }
  bool is_polydisc() const { return std::holds_alternative<PolydiscPoint>(data_); }
  const TypeIPoint& as_type_one() const;
  const PolydiscPoint& as_polydisc() const;

  friend bool operator==(const BerkPoint&, const BerkPoint&) = default;

 private:
  explicit BerkPoint(std::variant<TypeIPoint, PolydiscPoint> d) : data_(std::move(d)) {}
  std::variant<TypeIPoint, PolydiscPoint> data_;
};

/// [f]_zeta as an exact rational.
Rational seminorm(const BerkPoint& zeta, const Poly& f, const FieldSpec& spec);

/// ||zeta|| = max_n [X_n]_zeta.
Rational sup_norm(const BerkPoint& zeta, const FieldSpec& spec);

/// Divides a type-I point by a coordinate of largest absolute value (lowest
/// index on ties), giving a representative of norm 1.
BerkPoint normalize_projective(const BerkPoint& zeta, const FieldSpec& spec);

/// True when the seminorm is the Gauss point up to projective scaling:
/// all radii equal and every center coordinate inside its radius.
bool is_gauss_class(const BerkPoint& zeta, const FieldSpec& spec);

/// Point of P^N given by a representative in A^{N+1} \ {0}.
class ProjectiveClass {
 public:
  ProjectiveClass(BerkPoint rep, const FieldSpec& spec);
  const BerkPoint& representative() const { return rep_; }
  bool normalized() const { return normalized_; }
  std::size_t nvars() const { return rep_.nvars(); }

 private:
  BerkPoint rep_;
  bool normalized_;
};

/// lambda_f(z) = [f]_zeta / ||zeta||^deg f for homogeneous nonzero f.
Rational lambda(const Poly& f, const ProjectiveClass& z, const FieldSpec& spec);

/// Proportionality of type-I coordinate tuples. Throws
/// DomainError("UnsupportedComparison") for polydisc classes.
bool points_equal(const ProjectiveClass& a, const ProjectiveClass& b,
                  const FieldSpec& spec);

}  // namespace berk
