#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace berk {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial in t over Q, coefficients stored low to high
/// with no trailing zeros. The zero polynomial has no coefficients.
class TPoly {
 public:
  TPoly() = default;
  TPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  TPoly(long c) : TPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  explicit TPoly(std::vector<Rational> coeffs);

  static TPoly monomial(const Rational& c, std::size_t k);
  static TPoly t() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; the zero polynomial has none.
  std::optional<std::size_t> order() const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }
  bool is_one() const;

  TPoly operator-() const;
  TPoly& operator+=(const TPoly& o);
  TPoly& operator-=(const TPoly& o);
  TPoly& operator*=(const Rational& c);
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend TPoly operator*(TPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const TPoly& a, const TPoly& b) = default;

  /// Euclidean division over Q; divisor must be nonzero.
  static void divmod(const TPoly& a, const TPoly& b, TPoly& quot, TPoly& rem);
  /// Monic gcd (zero only when both inputs are zero).
  static TPoly gcd(TPoly a, TPoly b);

  /// Product truncated modulo t^prec.
  static TPoly mul_trunc(const TPoly& a, const TPoly& b, std::size_t prec);
  /// Inverse power series modulo t^prec; requires a nonzero constant term.
  static TPoly inverse_series(const TPoly& a, std::size_t prec);
  TPoly truncated(std::size_t prec) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Exact element of Q(t). Canonical form: num/den coprime, the lowest
/// nonzero coefficient of den equals 1, and zero is stored as 0/1. Elements
/// of Q are the constants; the p-adic field kind only ever sees those.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}            // NOLINT
  Scalar(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  Scalar(TPoly p) : num_(std::move(p)), den_(1) {} // NOLINT
  Scalar(TPoly num, TPoly den);

  static Scalar t() { return Scalar(TPoly::t()); }

  const TPoly& num() const { return num_; }
  const TPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.degree() <= 0; }
  /// Value of a constant element; throws DomainError otherwise.
  Rational constant_value() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Throws DomainError("DivisionByZero") for b = 0.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend bool operator==(const Scalar& a, const Scalar& b) = default;

  /// Negative exponents require a nonzero base; 0^0 = 1.
  Scalar pow(std::int64_t e) const;

 private:
  struct Coprime {};
  // For num and den already coprime: only rescales the denominator.
  Scalar(TPoly num, TPoly den, Coprime);
  void canonicalize();
  void scale_den();
  TPoly num_;
  TPoly den_;
};

/// Integer valuation, or +infinity for the zero element.
class Valuation {
 public:
  static Valuation infinity() { return Valuation(); }
  explicit Valuation(std::int64_t v) : v_(v) {}

  bool is_infinite() const { return !v_.has_value(); }
  /// Throws DomainError for the infinite valuation.
  std::int64_t value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);

 private:
  Valuation() = default;
  std::optional<std::int64_t> v_;
};

enum class FieldKind { kPAdic, kTAdic };

/// The working valued field: Q with a p-adic valuation or Q(t) with the
/// t-adic valuation, plus the base c realizing |x| = c^(-v(x)).
class FieldSpec {
 public:
  static FieldSpec padic(unsigned long p);
  static FieldSpec padic(unsigned long p, const Rational& base);
  static FieldSpec tadic(const Rational& base = Rational(2));

  FieldKind kind() const { return kind_; }
  bool is_padic() const { return kind_ == FieldKind::kPAdic; }
  /// Zero for the t-adic kind.
  unsigned long prime() const { return prime_; }
  const Rational& base() const { return base_; }
  /// Characteristic of the residue field (0 for Q(t), p for Q_p).
  unsigned long residue_characteristic() const { return prime_; }

  std::string describe() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(FieldKind kind, unsigned long p, Rational base)
      : kind_(kind), prime_(p), base_(std::move(base)) {}
  FieldKind kind_;
  unsigned long prime_;
  Rational base_;
};

/// Rejects elements that do not belong to the field (t under the p-adic kind).
void check_member(const Scalar& x, const FieldSpec& spec);

Valuation valuation(const Scalar& x, const FieldSpec& spec);
/// c^(-v) as an exact rational; 0 for the infinite valuation.
Rational abs_from_valuation(const Valuation& v, const FieldSpec& spec);
Rational abs_value(const Scalar& x, const FieldSpec& spec);

/// Element of the residue field: a rational for Q(t), an integer in
/// [0, p-1] for Q_p.
using ResidueScalar = Rational;

/// Arithmetic in the residue field Q or F_p on ResidueScalar values.
class ResidueField {
 public:
  explicit ResidueField(unsigned long characteristic = 0) : p_(characteristic) {}
  static ResidueField of(const FieldSpec& spec) {
    return ResidueField(spec.residue_characteristic());
  }

  unsigned long characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  /// Image of a rational (with denominator prime to p) in the field.
  ResidueScalar from_rational(const Rational& q) const;
  ResidueScalar add(const ResidueScalar& a, const ResidueScalar& b) const;
  ResidueScalar sub(const ResidueScalar& a, const ResidueScalar& b) const;
  ResidueScalar mul(const ResidueScalar& a, const ResidueScalar& b) const;
  ResidueScalar neg(const ResidueScalar& a) const;
  /// Throws DomainError("DivisionByZero") for a = 0.
  ResidueScalar inv(const ResidueScalar& a) const;
  ResidueScalar pow(const ResidueScalar& a, std::int64_t e) const;

  friend bool operator==(const ResidueField&, const ResidueField&) = default;

 private:
  unsigned long p_;
};

/// Residue class of x; throws DomainError("NegativeValuation") for v(x) < 0.
ResidueScalar reduce_scalar(const Scalar& x, const FieldSpec& spec);

std::string to_string(const Rational& q);

}  // namespace berk
