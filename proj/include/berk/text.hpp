#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berk/berkovich.hpp"
#include "berk/reduction.hpp"

namespace berk {

/// Syntax tree for arithmetic over t and X0..XN.
struct ParsedExpr {
  enum class Kind { kNumber, kT, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow };
  Kind kind = Kind::kNumber;
  Integer number;               // kNumber
  std::size_t var = 0;          // kVar
  std::int64_t exponent = 0;    // kPow
  std::vector<ParsedExpr> kids;
  int line = 1;
  int column = 1;
};

ParsedExpr parse_expr(std::string_view text);

/// Rational functions in t (any field kind accepts the syntax; membership
/// is checked by the callers that know the field).
Scalar parse_scalar(std::string_view text);
/// Number of variables defaults to one past the largest index used.
Poly parse_poly(std::string_view text, std::optional<std::size_t> nvars = std::nullopt);
/// `(a : b : ...)`, `disc(center=(..); rho=(..))`, `gauss` or `gauss(n)`.
/// A bare `gauss` takes its dimension from `nvars`.
BerkPoint parse_point(std::string_view text, std::optional<std::size_t> nvars = std::nullopt);
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);
std::vector<std::int64_t> parse_int_list(std::string_view text);

std::string format_tpoly(const TPoly& p);
std::string format_scalar(const Scalar& x);
std::string format_poly(const Poly& f);
std::string format_residue_poly(const ResiduePoly& f);
std::string format_point(const BerkPoint& z);
std::string format_residue_point(const ResidueProjPoint& p);
/// Rational as digits `n` or `n/d`.
std::string format_rational_short(const Rational& q);

/// Round-half-even decimal rendering with `digits` fractional digits.
std::string format_decimal(const Rational& q, unsigned digits);

}  // namespace berk
