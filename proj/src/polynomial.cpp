#include "berk/polynomial.hpp"

#include <numeric>

#include "berk/errors.hpp"

namespace berk {

namespace {

void check_arity(std::size_t expected, std::size_t got) {
  if (expected != got)
    throw DomainError("ArityMismatch", "expected " + std::to_string(expected) +
                                           " variables, got " + std::to_string(got));
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0U);
}

// ------------------------------------------------------------------ Poly

Poly Poly::constant(std::size_t nvars, const Scalar& c) {
  return monomial(nvars, Exponents(nvars, 0), c);
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars)
    throw DomainError("ArityMismatch", "variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e));
}

Poly Poly::monomial(std::size_t nvars, Exponents e, const Scalar& c) {
  check_arity(nvars, e.size());
  Poly p(nvars);
  p.add_term(e, c);
  return p;
}

Scalar Poly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
  check_arity(nvars_, e.size());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_arity(nvars_, o.nvars_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  check_arity(a.nvars_, b.nvars_);
  Poly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
  return r;
}

Poly operator*(const Scalar& c, const Poly& f) {
  Poly r(f.nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : f.terms_) r.terms_.emplace(e, c * x);
  return r;
}

// ----------------------------------------------------------- ResiduePoly

void ResiduePoly::add_term(const Exponents& e, const ResidueScalar& c) {
  check_arity(nvars_, e.size());
  ResidueScalar v = field_.from_rational(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (inserted) return;
  it->second = field_.add(it->second, v);
  if (it->second == 0) terms_.erase(it);
}

ResidueScalar ResiduePoly::evaluate(std::span<const ResidueScalar> point) const {
  check_arity(nvars_, point.size());
  ResidueScalar acc(0);
  for (const auto& [e, c] : terms_) {
    ResidueScalar term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] != 0) term = field_.mul(term, field_.pow(point[i], e[i]));
    acc = field_.add(acc, term);
  }
  return acc;
}

std::optional<unsigned> ResiduePoly::homogeneous_degree() const {
  if (terms_.empty()) return 0U;
  unsigned d = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) != d) return std::nullopt;
  return d;
}

// ------------------------------------------------------------- functions

Rational height(const Poly& f, const FieldSpec& spec) {
  Rational best(0);
  for (const auto& [e, c] : f.terms()) {
    Rational a = abs_value(c, spec);
    if (a > best) best = a;
  }
  return best;
}

Normalized normalize(const Poly& f, const FieldSpec& spec) {
  if (f.is_zero()) throw DomainError("ZeroPolynomial", "cannot normalize 0");
  const Scalar* pick = nullptr;
  Valuation best = Valuation::infinity();
  // Terms iterate in lexicographic order, so a strict comparison keeps the
  // smallest exponent among ties.
  for (const auto& [e, c] : f.terms()) {
    Valuation v = valuation(c, spec);
    if (pick == nullptr || v < best) {
      best = v;
      pick = &c;
    }
  }
  Scalar b = *pick;
  return {Scalar(1) / b * f, b};
}

std::optional<unsigned> is_homogeneous(const Poly& f) {
  if (f.is_zero()) return 0U;
  unsigned d = total_degree(f.terms().begin()->first);
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) != d) return std::nullopt;
  return d;
}

Scalar evaluate(const Poly& f, std::span<const Scalar> point) {
  check_arity(f.nvars(), point.size());
  std::vector<unsigned> max_exp(f.nvars(), 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
  std::vector<std::vector<Scalar>> powers(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    powers[i].push_back(Scalar(1));
    for (unsigned k = 1; k <= max_exp[i]; ++k)
      powers[i].push_back(powers[i].back() * point[i]);
  }
  Scalar acc;
  for (const auto& [e, c] : f.terms()) {
    Scalar term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * powers[i][e[i]];
    acc += term;
  }
  return acc;
}

Poly multiply(const Poly& f, const Poly& g) { return f * g; }

Poly recenter(const Poly& f, std::span<const Scalar> center) {
  check_arity(f.nvars(), center.size());
  const std::size_t n = f.nvars();
  // shifted[i][k] = (Y_i + c_i)^k
  std::vector<std::vector<Poly>> shifted(n);
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i].push_back(Poly::constant(n, Scalar(1)));
  }
  Poly result(n);
  for (const auto& [e, c] : f.terms()) {
    Poly term = Poly::constant(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      while (shifted[i].size() <= e[i]) {
        Poly lin = Poly::variable(n, i) + Poly::constant(n, center[i]);
        shifted[i].push_back(shifted[i].back() * lin);
      }
      term = term * shifted[i][e[i]];
    }
    result += term;
  }
  return result;
}

ResiduePoly reduce_poly(const Poly& f, const FieldSpec& spec) {
  ResiduePoly r(f.nvars(), ResidueField::of(spec));
  for (const auto& [e, c] : f.terms()) {
    Valuation v = valuation(c, spec);
    if (v < Valuation(0))
      throw DomainError("HeightExceedsOne", "coefficient with |c| > 1");
    r.add_term(e, reduce_scalar(c, spec));
  }
  return r;
}

}  // namespace berk
