#include "berk/valued_field.hpp"

#include <algorithm>
#include <sstream>

#include "berk/errors.hpp"

namespace berk {

// ---------------------------------------------------------------- TPoly

TPoly::TPoly(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

TPoly::TPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

TPoly TPoly::monomial(const Rational& c, std::size_t k) {
  TPoly p;
  if (c == 0) return p;
  p.coeffs_.assign(k + 1, Rational(0));
  p.coeffs_[k] = c;
  return p;
}

void TPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> TPoly::order() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return i;
  return std::nullopt;
}

Rational TPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

bool TPoly::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

TPoly TPoly::operator-() const {
  TPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TPoly& TPoly::operator+=(const TPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

TPoly& TPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

namespace {

// Schoolbook product over the index range [0, limit).
std::vector<Rational> convolve(const std::vector<Rational>& a,
                               const std::vector<Rational>& b, std::size_t limit) {
  std::size_t n = std::min(limit, a.size() + b.size() - 1);
  std::vector<Rational> out(n);
  Rational tmp;
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
      if (b[j] == 0) continue;
      mpq_mul(tmp.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
      out[i + j] += tmp;
    }
  }
  return out;
}

}  // namespace

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return TPoly();
  if (a.coeffs_.size() == 1) return b * a.coeffs_[0];
  if (b.coeffs_.size() == 1) return a * b.coeffs_[0];
  return TPoly(convolve(a.coeffs_, b.coeffs_, a.coeffs_.size() + b.coeffs_.size()));
}

TPoly TPoly::mul_trunc(const TPoly& a, const TPoly& b, std::size_t prec) {
  if (a.is_zero() || b.is_zero() || prec == 0) return TPoly();
  return TPoly(convolve(a.coeffs_, b.coeffs_, prec));
}

TPoly TPoly::truncated(std::size_t prec) const {
  if (coeffs_.size() <= prec) return *this;
  return TPoly(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + prec));
}

TPoly TPoly::inverse_series(const TPoly& a, std::size_t prec) {
  if (a.coeff(0) == 0)
    throw DomainError("DivisionByZero", "series inverse needs a unit constant term");
  std::vector<Rational> inv(prec);
  if (prec == 0) return TPoly();
  Rational c0inv = 1 / a.coeffs_[0];
  inv[0] = c0inv;
  for (std::size_t k = 1; k < prec; ++k) {
    Rational acc;
    for (std::size_t i = 1; i <= k && i < a.coeffs_.size(); ++i)
      acc += a.coeffs_[i] * inv[k - i];
    inv[k] = -acc * c0inv;
  }
  return TPoly(std::move(inv));
}

void TPoly::divmod(const TPoly& a, const TPoly& b, TPoly& quot, TPoly& rem) {
  if (b.is_zero()) throw DomainError("DivisionByZero", "polynomial division by zero");
  rem = a;
  quot = TPoly();
  if (a.degree() < b.degree()) return;
  std::vector<Rational> q(a.coeffs_.size() - b.coeffs_.size() + 1);
  Rational lead_inv = 1 / b.leading();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    std::size_t shift = rem.degree() - b.degree();
    Rational c = rem.leading() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
      rem.coeffs_[i + shift] -= c * b.coeffs_[i];
    rem.trim();
  }
  quot = TPoly(std::move(q));
}

TPoly TPoly::gcd(TPoly a, TPoly b) {
  while (!b.is_zero()) {
    TPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    if (!b.is_zero()) b *= Rational(1) / b.leading();  // keep sizes in check
  }
  if (!a.is_zero()) a *= Rational(1) / a.leading();
  return a;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("DivisionByZero", "zero denominator");
  canonicalize();
}

Scalar::Scalar(TPoly num, TPoly den, Coprime) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) den_ = TPoly(1);
  else scale_den();
}

namespace {

TPoly exact_quotient(const TPoly& a, const TPoly& b) {
  if (b.is_one()) return a;
  TPoly q, r;
  TPoly::divmod(a, b, q, r);
  return q;
}

}  // namespace

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = TPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    TPoly g = TPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
  }
  scale_den();
}

void Scalar::scale_den() {
  Rational lowest = den_.coeff(*den_.order());
  if (lowest != 1) {
    Rational s = 1 / lowest;
    num_ *= s;
    den_ *= s;
  }
}

Rational Scalar::constant_value() const {
  if (!is_constant())
    throw DomainError("NotConstant", "element depends on t");
  return num_.coeff(0);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ + b.num_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // With g = gcd(b, d): a/(b'g) + c/(d'g) = (a d' + c b') / (b' d' g), and
  // only g can share a factor with the new numerator.
  TPoly g = TPoly::gcd(a.den_, b.den_);
  TPoly bp = exact_quotient(a.den_, g);
  TPoly dp = exact_quotient(b.den_, g);
  TPoly num = a.num_ * dp + b.num_ * bp;
  if (num.is_zero()) return Scalar();
  TPoly h = g.is_one() ? g : TPoly::gcd(num, g);
  return Scalar(exact_quotient(num, h), bp * dp * exact_quotient(g, h), Scalar::Coprime{});
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ * b.num_);
  // Cross-cancel so that the product of the reduced parts is coprime.
  TPoly g1 = b.den_.is_one() ? TPoly(1) : TPoly::gcd(a.num_, b.den_);
  TPoly g2 = a.den_.is_one() ? TPoly(1) : TPoly::gcd(b.num_, a.den_);
  return Scalar(exact_quotient(a.num_, g1) * exact_quotient(b.num_, g2),
                exact_quotient(a.den_, g2) * exact_quotient(b.den_, g1), Scalar::Coprime{});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DomainError("DivisionByZero", "division by the zero element");
  if (b.is_constant()) {
    Scalar r = a;
    r.num_ *= Rational(1) / b.num_.coeff(0);
    return r;
  }
  return a * Scalar(b.den_, b.num_, Scalar::Coprime{});
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) {
    if (is_zero()) throw DomainError("DivisionByZero", "negative power of zero");
    return Scalar(1) / pow(-e);
  }
  // Powers of coprime polynomials stay coprime.
  auto power = [](TPoly base, std::uint64_t n) {
    TPoly result(1);
    while (n > 0) {
      if (n & 1U) result = result * base;
      n >>= 1U;
      if (n > 0) base = base * base;
    }
    return result;
  };
  auto n = static_cast<std::uint64_t>(e);
  return Scalar(power(num_, n), power(den_, n), Coprime{});
}

// ------------------------------------------------------------- Valuation

std::int64_t Valuation::value() const {
  if (!v_) throw DomainError("InfiniteValuation", "valuation of zero is infinite");
  return *v_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite())
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  return *a.v_ <=> *b.v_;
}

// ------------------------------------------------------------- FieldSpec

FieldSpec FieldSpec::padic(unsigned long p) { return padic(p, Rational(p)); }

FieldSpec FieldSpec::padic(unsigned long p, const Rational& base) {
  Integer pz(p);
  if (p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
    throw DomainError("NotPrime", std::to_string(p) + " is not prime");
  if (base <= 1) throw DomainError("InvalidBase", "base must exceed 1");
  return FieldSpec(FieldKind::kPAdic, p, base);
}

FieldSpec FieldSpec::tadic(const Rational& base) {
  if (base <= 1) throw DomainError("InvalidBase", "base must exceed 1");
  return FieldSpec(FieldKind::kTAdic, 0, base);
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  if (is_padic())
    os << "p-adic(p=" << prime_ << ", c=" << to_string(base_) << ")";
  else
    os << "t-adic(c=" << to_string(base_) << ")";
  return os.str();
}

void check_member(const Scalar& x, const FieldSpec& spec) {
  if (spec.is_padic() && !x.is_constant())
    throw DomainError("NotInField", "t is not an element of the p-adic field");
}

namespace {

std::int64_t padic_order(const Integer& n, unsigned long p) {
  Integer rest;
  Integer pz(p);
  return static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

Valuation valuation(const Scalar& x, const FieldSpec& spec) {
  check_member(x, spec);
  if (x.is_zero()) return Valuation::infinity();
  if (spec.is_padic()) {
    Rational q = x.constant_value();
    return Valuation(padic_order(q.get_num(), spec.prime()) -
                     padic_order(q.get_den(), spec.prime()));
  }
  return Valuation(static_cast<std::int64_t>(*x.num().order()) -
                   static_cast<std::int64_t>(*x.den().order()));
}

Rational abs_from_valuation(const Valuation& v, const FieldSpec& spec) {
  if (v.is_infinite()) return Rational(0);
  std::int64_t e = v.value();
  const Rational& c = spec.base();
  Integer num, den;
  auto k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), k);
  // |x| = c^(-v): a positive valuation puts the power of c below the bar.
  Rational r = e >= 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

Rational abs_value(const Scalar& x, const FieldSpec& spec) {
  return abs_from_valuation(valuation(x, spec), spec);
}

// ---------------------------------------------------------- ResidueField

namespace {

Integer mod_p(const Integer& n, unsigned long p) {
  Integer r = n % Integer(p);
  if (r < 0) r += p;
  return r;
}

}  // namespace

ResidueScalar ResidueField::from_rational(const Rational& q) const {
  if (p_ == 0) return q;
  Integer den = mod_p(q.get_den(), p_);
  if (den == 0)
    throw DomainError("NegativeValuation", "denominator divisible by p");
  Integer inv;
  Integer pz(p_);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  return Rational(mod_p(mod_p(q.get_num(), p_) * inv, p_));
}

ResidueScalar ResidueField::add(const ResidueScalar& a, const ResidueScalar& b) const {
  if (p_ == 0) return a + b;
  return Rational(mod_p(a.get_num() + b.get_num(), p_));
}

ResidueScalar ResidueField::sub(const ResidueScalar& a, const ResidueScalar& b) const {
  if (p_ == 0) return a - b;
  return Rational(mod_p(a.get_num() - b.get_num(), p_));
}

ResidueScalar ResidueField::mul(const ResidueScalar& a, const ResidueScalar& b) const {
  if (p_ == 0) return a * b;
  return Rational(mod_p(a.get_num() * b.get_num(), p_));
}

ResidueScalar ResidueField::neg(const ResidueScalar& a) const {
  return sub(Rational(0), a);
}

ResidueScalar ResidueField::inv(const ResidueScalar& a) const {
  if (a == 0) throw DomainError("DivisionByZero", "inverse of zero residue");
  if (p_ == 0) return 1 / a;
  return from_rational(Rational(Integer(1), a.get_num()));
}

ResidueScalar ResidueField::pow(const ResidueScalar& a, std::int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  ResidueScalar result(1);
  ResidueScalar base = a;
  auto n = static_cast<std::uint64_t>(e);
  while (n > 0) {
    if (n & 1U) result = mul(result, base);
    n >>= 1U;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

ResidueScalar reduce_scalar(const Scalar& x, const FieldSpec& spec) {
  Valuation v = valuation(x, spec);
  if (v.is_infinite() || v.value() > 0) return Rational(0);
  if (v.value() < 0)
    throw DomainError("NegativeValuation", "residue of an element with |x| > 1");
  if (spec.is_padic()) return ResidueField::of(spec).from_rational(x.constant_value());
  // v = 0 with coprime num/den forces both constant terms to be nonzero.
  return Rational(x.num().coeff(0) / x.den().coeff(0));
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace berk
