#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "berk/valued_field.hpp"

namespace berk {

/// Exponents (a_0, ..., a_N) of a monomial in X0..XN.
using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

/// Sparse polynomial in X0..XN over Q(t). Zero coefficients are never
/// stored; terms are keyed in lexicographic exponent order.
class Poly {
 public:
  using TermMap = std::map<Exponents, Scalar>;

  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Scalar& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(std::size_t nvars, Exponents e, const Scalar& c = Scalar(1));

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the given monomial (zero when absent).
  Scalar coeff(const Exponents& e) const;

  /// Adds c to the coefficient of e, dropping the term if it cancels.
  void add_term(const Exponents& e, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& f);
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

/// Sparse polynomial over the residue field.
class ResiduePoly {
 public:
  using TermMap = std::map<Exponents, ResidueScalar>;

  ResiduePoly(std::size_t nvars, ResidueField field) : nvars_(nvars), field_(field) {}

  std::size_t nvars() const { return nvars_; }
  const ResidueField& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponents& e, const ResidueScalar& c);

  /// Throws DomainError("ArityMismatch") on a wrong-length point.
  ResidueScalar evaluate(std::span<const ResidueScalar> point) const;
  std::optional<unsigned> homogeneous_degree() const;

  friend bool operator==(const ResiduePoly&, const ResiduePoly&) = default;

 private:
  std::size_t nvars_;
  ResidueField field_;
  TermMap terms_;
};

/// Maximum absolute value of the coefficients; 0 for f = 0.
Rational height(const Poly& f, const FieldSpec& spec);

struct Normalized {
  Poly poly;
  Scalar factor;  // f = factor * poly
};

/// Divides f by its coefficient of largest absolute value, ties going to
/// the lexicographically smallest exponent vector.
Normalized normalize(const Poly& f, const FieldSpec& spec);

/// Common total degree of all terms; the zero polynomial counts as degree 0.
std::optional<unsigned> is_homogeneous(const Poly& f);

Scalar evaluate(const Poly& f, std::span<const Scalar> point);
Poly multiply(const Poly& f, const Poly& g);

/// g(Y) = f(Y + c): the coefficients of f expanded in powers of (X - c).
Poly recenter(const Poly& f, std::span<const Scalar> center);

/// Coefficient-wise residue image; requires height(f) <= 1.
ResiduePoly reduce_poly(const Poly& f, const FieldSpec& spec);

}  // namespace berk
