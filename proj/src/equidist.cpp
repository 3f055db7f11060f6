#include "berk/equidist.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

#include "berk/errors.hpp"

namespace berk {

// -------------------------------------------------------------- Multiset

void Multiset::add(ProjectiveClass z, std::uint64_t multiplicity) {
  if (multiplicity == 0) throw DomainError("InvalidMultiplicity", "multiplicity must be positive");
  if (!entries_.empty() && entries_.front().point.nvars() != z.nvars())
    throw DomainError("ArityMismatch", "multiset points live in different spaces");
  cardinality_ += multiplicity;
  entries_.push_back({std::move(z), multiplicity});
}

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  Rational total(0);
  for (const auto& a : atoms_) {
    if (a.weight <= 0) throw DomainError("InvalidMeasure", "weights must be positive");
    total += a.weight;
  }
  if (total != 1) throw DomainError("InvalidMeasure", "total mass " + to_string(total) + " != 1");
}

DiscreteMeasure DiscreteMeasure::dirac(ProjectiveClass z) {
  return DiscreteMeasure({Atom{std::move(z), Rational(1)}});
}

DiscreteMeasure DiscreteMeasure::gauss(std::size_t nvars, const FieldSpec& spec) {
  return dirac(ProjectiveClass(BerkPoint::gauss(nvars), spec));
}

DiscreteMeasure DiscreteMeasure::uniform(const Multiset& z) {
  if (z.cardinality() == 0) throw DomainError("EmptyMultiset", "uniform measure on nothing");
  std::vector<Atom> atoms;
  for (const auto& e : z.entries())
    atoms.push_back({e.point, Rational(Integer(e.multiplicity), Integer(z.cardinality()))});
  for (auto& a : atoms) a.weight.canonicalize();
  return DiscreteMeasure(std::move(atoms));
}

// ------------------------------------------------------------ TorusPoint

TorusPoint::TorusPoint(std::vector<Scalar> coords, const FieldSpec& spec)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DomainError("NotInTorus", "torus point needs N >= 1");
  for (const auto& c : coords_)
    if (valuation(c, spec) != Valuation(0))
      throw DomainError("NotInTorus", "every coordinate must have absolute value 1");
}

ResidueTorusPoint TorusPoint::residue(const FieldSpec& spec) const {
  std::vector<ResidueScalar> out;
  for (std::size_t i = 1; i < coords_.size(); ++i)
    out.push_back(reduce_scalar(coords_[i] / coords_[0], spec));
  return ResidueTorusPoint(std::move(out), ResidueField::of(spec));
}

TorusPoint TorusPoint::power(std::int64_t j, const FieldSpec& spec) const {
  std::vector<Scalar> out;
  for (const auto& c : coords_) out.push_back(c.pow(j));
  return TorusPoint(std::move(out), spec);
}

// ------------------------------------------------------------ TestFamily

namespace {

void require_normalized_form(const Poly& f, const FieldSpec& spec) {
  if (f.is_zero()) throw DomainError("ZeroPolynomial", "test polynomial is zero");
  if (!is_homogeneous(f)) throw DomainError("NotHomogeneous", "test polynomial is not homogeneous");
  if (height(f, spec) != 1) throw DomainError("NotNormalized", "test polynomial must have height 1");
}

}  // namespace

void TestFamily::add(std::string id, Poly f, const FieldSpec& spec) {
  require_normalized_form(f, spec);
  if (!members_.empty() && members_.front().poly.nvars() != f.nvars())
    throw DomainError("ArityMismatch", "family members must share their variables");
  members_.push_back({std::move(id), std::move(f)});
}

void TestFamily::add_normalized(std::string id, const Poly& f, const FieldSpec& spec) {
  add(std::move(id), normalize(f, spec).poly, spec);
}

bool TestFamily::contains(const Poly& f) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const FamilyMember& m) { return m.poly == f; });
}

namespace {

void monomials_of_degree(std::size_t nvars, unsigned degree, Exponents& cur, std::size_t pos,
                         std::vector<Exponents>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= degree; ++k) {
    cur[pos] = degree - k;
    monomials_of_degree(nvars, k, cur, pos + 1, out);
  }
}

Poly random_form(std::size_t nvars, unsigned degree, std::mt19937_64& rng, const FieldSpec& spec) {
  std::vector<Exponents> monos;
  Exponents cur(nvars, 0);
  monomials_of_degree(nvars, degree, cur, 0, monos);
  Poly f(nvars);
  while (f.is_zero()) {
    for (const auto& m : monos) {
      if (rng() % 2 == 0) continue;
      long c = static_cast<long>(rng() % 7) - 3;
      if (c == 0) continue;
      Scalar coeff(c);
      if (!spec.is_padic() && rng() % 4 == 0) coeff = coeff * Scalar::t();
      if (spec.is_padic()) coeff = Scalar(c * static_cast<long>(1 + rng() % 3));
      f.add_term(m, coeff);
    }
  }
  return f;
}

}  // namespace

TestFamily default_family(const TorusPoint& a, const FieldSpec& spec, const FamilyOptions& options) {
  const std::size_t n = a.nvars();
  TestFamily family;
  if (options.monomials)
    for (std::size_t i = 0; i < n; ++i)
      family.add("mono_" + std::to_string(i), Poly::variable(n, i), spec);
  if (options.differences)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k)
        family.add("diff_" + std::to_string(i) + "_" + std::to_string(k),
                   Poly::variable(n, i) - Poly::variable(n, k), spec);
  if (options.scaled) {
    ResidueTorusPoint res = a.residue(spec);
    for (std::size_t m = 0; m < res.dim(); ++m) {
      const Rational& c = res.coords()[m];
      if (c == 1) continue;
      for (std::size_t k = 1; k < n; ++k) {
        Poly f = Scalar(c) * Poly::variable(n, 0) - Poly::variable(n, k);
        if (family.contains(f)) continue;
        family.add("scaled_" + std::to_string(m + 1) + "_" + std::to_string(k), f, spec);
      }
    }
  }
  std::mt19937_64 rng(options.seed);
  for (unsigned k = 0; k < options.random_count; ++k) {
    Poly f = random_form(n, 1 + k % 3, rng, spec);
    family.add_normalized("rand_" + std::to_string(k), f, spec);
  }
  return family;
}

// ----------------------------------------------------------- statistics

Multiset powers_multiset(const TorusPoint& a, std::int64_t count, const FieldSpec& spec) {
  if (count < 1) throw DomainError("InvalidLength", "need at least one power");
  Multiset z;
  std::vector<Scalar> cur = a.coords();
  for (std::int64_t j = 1; j <= count; ++j) {
    if (j > 1)
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i] * a.coords()[i];
    z.add(ProjectiveClass(BerkPoint::type_one(cur), spec));
  }
  return z;
}

Rational s_statistic(const Multiset& z, const Poly& f, const FieldSpec& spec) {
  if (z.cardinality() == 0) throw DomainError("EmptyMultiset", "S statistic of an empty multiset");
  require_normalized_form(f, spec);
  Rational sum(0);
  for (const auto& e : z.entries()) sum += Rational(Integer(e.multiplicity)) * lambda(f, e.point, spec);
  return sum / Rational(Integer(z.cardinality()));
}

std::uint64_t count_below(const Multiset& z, const Poly& f, const Rational& t,
                          const FieldSpec& spec) {
  if (t <= 0 || t > 1) throw DomainError("ThresholdOutOfRange", "threshold must lie in (0, 1]");
  require_normalized_form(f, spec);
  std::uint64_t n = 0;
  for (const auto& e : z.entries())
    if (lambda(f, e.point, spec) < t) n += e.multiplicity;
  return n;
}

Rational integrate_lambda(const DiscreteMeasure& mu, const Poly& f, const FieldSpec& spec) {
  require_normalized_form(f, spec);
  Rational total(0);
  for (const auto& a : mu.atoms()) total += a.weight * lambda(f, a.point, spec);
  return total;
}

Poly witness_polynomial(const Relation& rel) {
  std::vector<std::int64_t> l = rel.exponents();
  std::int64_t sum = 0;
  for (auto x : l) sum += x;
  if (sum < 0) {
    for (auto& x : l) x = -x;
    sum = -sum;
  }
  std::int64_t r = std::max<std::int64_t>(0, -*std::min_element(l.begin(), l.end()));
  const std::size_t n = l.size() + 1;
  Exponents lead(n, 0);
  Exponents tail(n, 0);
  tail[0] = static_cast<unsigned>(sum);
  for (std::size_t i = 0; i < l.size(); ++i) {
    lead[i + 1] = static_cast<unsigned>(l[i] + r);
    tail[i + 1] = static_cast<unsigned>(r);
  }
  Poly f = Poly::monomial(n, lead) - Poly::monomial(n, tail);
  if (f.is_zero() || !is_homogeneous(f))
    throw std::logic_error("witness polynomial must be nonzero and homogeneous");
  return f;
}

WitnessCheck witness_check(const TorusPoint& a, const Relation& rel, const FieldSpec& spec) {
  if (rel.exponents().size() + 1 != a.nvars())
    throw DomainError("ArityMismatch", "relation length must be N");
  ResidueTorusPoint res = a.residue(spec);
  if (res.monomial(rel.exponents()) != 1)
    throw DomainError("RelationNotSatisfiedAtResidue", "reduced point violates the relation");
  Scalar prod(1);
  for (std::size_t i = 0; i < rel.exponents().size(); ++i)
    prod = prod * (a.coords()[i + 1] / a.coords()[0]).pow(rel.exponents()[i]);
  Scalar big_a = prod - Scalar(1);
  Rational abs_a = abs_value(big_a, spec);
  return {big_a, abs_a, abs_a < 1};
}

Rational generic_fraction(const Multiset& z, const Hypersurface& w, const FieldSpec& spec) {
  if (z.cardinality() == 0) throw DomainError("EmptyMultiset", "fraction of an empty multiset");
  std::uint64_t inside = 0;
  for (const auto& e : z.entries()) {
    if (!e.point.representative().is_type_one())
      throw DomainError("UnsupportedPoint", "generic fraction needs type-I points");
    auto target = reduce_point(e.point, spec);
    if (in_hypersurface(std::get<ResidueProjPoint>(target), w)) inside += e.multiplicity;
  }
  Rational r(Integer(inside), Integer(z.cardinality()));
  r.canonicalize();
  return r;
}

// ------------------------------------------------------- orbit streaming

class OrbitLambda::Impl {
 public:
  virtual ~Impl() = default;
  virtual Rational next() = 0;
};

namespace {

struct Term {
  Scalar coeff;
  Scalar base;  // prod a_n^{alpha_n}
};

std::vector<Term> orbit_terms(const TorusPoint& a, const Poly& f) {
  if (f.nvars() != a.nvars()) throw DomainError("ArityMismatch", "polynomial and point arities differ");
  std::vector<Term> terms;
  for (const auto& [e, c] : f.terms()) {
    Scalar base(1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) base = base * a.coords()[i].pow(e[i]);
    // Monomials with the same point value contribute as one term.
    auto same = std::find_if(terms.begin(), terms.end(), [&](const Term& t) { return t.base == base; });
    if (same == terms.end()) {
      terms.push_back({c, base});
    } else {
      same->coeff += c;
      if (same->coeff.is_zero()) terms.erase(same);
    }
  }
  return terms;
}

// Every coordinate of a^j has absolute value 1, so lambda_f(a^j) = |f(a^j)|.
class ExactOrbit final : public OrbitLambda::Impl {
 public:
  ExactOrbit(std::vector<Term> terms, const FieldSpec& spec)
      : terms_(std::move(terms)), cur_(terms_.size(), Scalar(1)), spec_(spec) {}

  Rational next() override {
    Scalar value;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      cur_[i] = cur_[i] * terms_[i].base;
      value += terms_[i].coeff * cur_[i];
    }
    return abs_value(value, spec_);
  }

 private:
  std::vector<Term> terms_;
  std::vector<Scalar> cur_;
  FieldSpec spec_;
};

TPoly pow_trunc(TPoly base, std::int64_t e, std::size_t prec) {
  TPoly result = TPoly(1).truncated(prec);
  while (e > 0) {
    if (e & 1) result = TPoly::mul_trunc(result, base, prec);
    e >>= 1;
    if (e > 0) base = TPoly::mul_trunc(base, base, prec);
  }
  return result;
}

// Arithmetic in Q[[t]]/(t^P). Valuations below P are exact because the
// truncation is a ring quotient.
class TAdicTruncatedOrbit final : public OrbitLambda::Impl {
 public:
  TAdicTruncatedOrbit(const std::vector<Term>& terms, const FieldSpec& spec, EvalMode mode)
      : spec_(spec), prec_(std::max<std::size_t>(1, mode.initial_precision)), cap_(mode.precision_cap) {
    // Scale the coefficients by D and every base by B, both polynomials, so
    // the sum becomes D * B^j * f(a^j) with polynomial data throughout.
    TPoly d(1), b(1);
    for (const auto& t : terms) {
      d = lcm(d, t.coeff.den());
      b = lcm(b, t.base.den());
    }
    shift_coeff_ = static_cast<std::int64_t>(d.order().value());
    shift_base_ = static_cast<std::int64_t>(b.order().value());
    for (const auto& t : terms) {
      TPoly q, r;
      TPoly::divmod(d, t.coeff.den(), q, r);
      coeffs_.push_back(t.coeff.num() * q);
      TPoly::divmod(b, t.base.den(), q, r);
      bases_.push_back(t.base.num() * q);
      coeff_degree_ = std::max(coeff_degree_, coeffs_.back().degree());
      base_degree_ = std::max(base_degree_, bases_.back().degree());
    }
    rebuild();
  }

  Rational next() override {
    ++j_;
    for (std::size_t i = 0; i < cur_.size(); ++i) cur_[i] = TPoly::mul_trunc(cur_[i], base_trunc_[i], prec_);
    for (;;) {
      TPoly value;
      for (std::size_t i = 0; i < cur_.size(); ++i) value += TPoly::mul_trunc(coeff_trunc_[i], cur_[i], prec_);
      if (auto ord = value.order())
        return abs_from_valuation(
            Valuation(static_cast<std::int64_t>(*ord) - shift_coeff_ - j_ * shift_base_), spec_);
      // Data of total degree below P is represented exactly, so a vanishing
      // truncation is a genuine zero.
      if (coeff_degree_ + j_ * base_degree_ < static_cast<long>(prec_)) return Rational(0);
      if (prec_ * 2 > cap_)
        throw PrecisionCapExceeded("valuation exceeds t-adic precision cap " + std::to_string(cap_) +
                                   " at index " + std::to_string(j_));
      prec_ *= 2;
      rebuild();
    }
  }

 private:
  static TPoly lcm(const TPoly& x, const TPoly& y) {
    TPoly q, r;
    TPoly::divmod(x * y, TPoly::gcd(x, y), q, r);
    return q;
  }

  void rebuild() {
    coeff_trunc_.clear();
    base_trunc_.clear();
    cur_.clear();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeff_trunc_.push_back(coeffs_[i].truncated(prec_));
      base_trunc_.push_back(bases_[i].truncated(prec_));
      cur_.push_back(pow_trunc(base_trunc_.back(), j_, prec_));
    }
  }

  FieldSpec spec_;
  std::size_t prec_;
  std::size_t cap_;
  std::int64_t j_ = 0;
  std::int64_t shift_coeff_ = 0;
  std::int64_t shift_base_ = 0;
  long coeff_degree_ = 0;
  long base_degree_ = 0;
  std::vector<TPoly> coeffs_, bases_;
  std::vector<TPoly> coeff_trunc_, base_trunc_, cur_;
};

// Arithmetic in Z/p^P after clearing denominators as in the t-adic case.
class PAdicTruncatedOrbit final : public OrbitLambda::Impl {
 public:
  PAdicTruncatedOrbit(const std::vector<Term>& terms, const FieldSpec& spec, EvalMode mode)
      : spec_(spec), prec_(std::max<std::size_t>(1, mode.initial_precision)), cap_(mode.precision_cap) {
    Integer d(1), b(1);
    for (const auto& t : terms) {
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.constant_value().get_den_mpz_t());
      mpz_lcm(b.get_mpz_t(), b.get_mpz_t(), t.base.constant_value().get_den_mpz_t());
    }
    shift_coeff_ = p_valuation(d);
    shift_base_ = p_valuation(b);
    for (const auto& t : terms) {
      Rational c = t.coeff.constant_value() * d;
      Rational x = t.base.constant_value() * b;
      coeffs_.push_back(c.get_num());
      bases_.push_back(x.get_num());
      abs_coeff_.push_back(abs(coeffs_.back()));
      abs_base_.push_back(abs(bases_.back()));
      abs_cur_.emplace_back(1);
    }
    rebuild();
  }

  Rational next() override {
    ++j_;
    for (std::size_t i = 0; i < cur_.size(); ++i) {
      cur_[i] = (cur_[i] * base_mod_[i]) % modulus_;
      abs_cur_[i] *= abs_base_[i];
    }
    for (;;) {
      Integer value(0);
      for (std::size_t i = 0; i < cur_.size(); ++i) value += coeff_mod_[i] * cur_[i];
      value %= modulus_;
      if (value != 0)
        return abs_from_valuation(Valuation(p_valuation(value) - shift_coeff_ - j_ * shift_base_), spec_);
      // |sum c b^j| below p^P rules out a hidden nonzero multiple.
      Integer bound(0);
      for (std::size_t i = 0; i < cur_.size(); ++i) bound += abs_coeff_[i] * abs_cur_[i];
      if (bound < modulus_) return Rational(0);
      if (prec_ * 2 > cap_)
        throw PrecisionCapExceeded("valuation exceeds p-adic precision cap " + std::to_string(cap_) +
                                   " at index " + std::to_string(j_));
      prec_ *= 2;
      rebuild();
    }
  }

 private:
  std::int64_t p_valuation(Integer x) const {
    Integer pz(spec_.prime());
    return static_cast<std::int64_t>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
  }

  Integer reduce(const Integer& x) const {
    Integer r = x % modulus_;
    if (r < 0) r += modulus_;
    return r;
  }

  void rebuild() {
    mpz_ui_pow_ui(modulus_.get_mpz_t(), spec_.prime(), prec_);
    coeff_mod_.clear();
    base_mod_.clear();
    cur_.clear();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      coeff_mod_.push_back(reduce(coeffs_[i]));
      base_mod_.push_back(reduce(bases_[i]));
      Integer c;
      Integer e(j_);
      mpz_powm(c.get_mpz_t(), base_mod_.back().get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
      cur_.push_back(c);
    }
  }

  FieldSpec spec_;
  std::size_t prec_;
  std::size_t cap_;
  std::int64_t j_ = 0;
  std::int64_t shift_coeff_ = 0;
  std::int64_t shift_base_ = 0;
  Integer modulus_;
  std::vector<Integer> coeffs_, bases_;
  std::vector<Integer> abs_coeff_, abs_base_, abs_cur_;
  std::vector<Integer> coeff_mod_, base_mod_, cur_;
};

}  // namespace

OrbitLambda::OrbitLambda(const TorusPoint& a, const Poly& f, const FieldSpec& spec, EvalMode mode) {
  require_normalized_form(f, spec);
  auto terms = orbit_terms(a, f);
  if (!mode.adaptive)
    impl_ = std::make_unique<ExactOrbit>(std::move(terms), spec);
  else if (spec.is_padic())
    impl_ = std::make_unique<PAdicTruncatedOrbit>(terms, spec, mode);
  else
    impl_ = std::make_unique<TAdicTruncatedOrbit>(terms, spec, mode);
}

OrbitLambda::~OrbitLambda() = default;
OrbitLambda::OrbitLambda(OrbitLambda&&) noexcept = default;
OrbitLambda& OrbitLambda::operator=(OrbitLambda&&) noexcept = default;

Rational OrbitLambda::next() { return impl_->next(); }

// ------------------------------------------------------------ experiment

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kConsistentEquidistributed: return "CONSISTENT_EQUIDISTRIBUTED";
    case Verdict::kFailsWithWitness: return "FAILS_WITH_WITNESS";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::vector<std::int64_t> default_checkpoints(std::int64_t lmax) {
  std::vector<std::int64_t> cps;
  for (std::int64_t div : {8, 4, 2, 1}) {
    std::int64_t l = lmax / div;
    if (l >= 1 && (cps.empty() || cps.back() != l)) cps.push_back(l);
  }
  return cps;
}

namespace {

MemberReport run_member(const TorusPoint& a, const FamilyMember& m, const StatReport& shape,
                        const RunOptions& options, const FieldSpec& spec) {
  MemberReport out{m.id, m.poly, {}, {}};
  OrbitLambda stream(a, m.poly, spec, options.mode);
  std::vector<std::uint64_t> counts(shape.count_thresholds.size(), 0);
  Rational sum(0);
  std::size_t next_cp = 0;
  for (std::int64_t j = 1; j <= options.lmax && next_cp < shape.checkpoints.size(); ++j) {
    Rational lam = stream.next();
    sum += lam;
    if (lam < 1) out.hits.push_back(j);
    for (std::size_t k = 0; k < counts.size(); ++k)
      if (lam < shape.count_thresholds[k]) ++counts[k];
    if (j == shape.checkpoints[next_cp]) {
      out.series.push_back({j, sum / Rational(Integer(j)), counts});
      ++next_cp;
    }
  }
  return out;
}

}  // namespace

StatReport convergence_report(const TorusPoint& a, const TestFamily& family,
                              const RunOptions& options, const FieldSpec& spec) {
  if (options.lmax < 1) throw DomainError("InvalidLength", "lmax must be positive");
  StatReport report;
  report.lmax = options.lmax;
  report.checkpoints = options.checkpoints.empty() ? default_checkpoints(options.lmax) : options.checkpoints;
  for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
    std::int64_t c = report.checkpoints[i];
    if (c < 1 || c > options.lmax || (i > 0 && c <= report.checkpoints[i - 1]))
      throw DomainError("InvalidCheckpoints", "checkpoints must increase within [1, lmax]");
  }
  report.count_thresholds = {Rational(1)};
  std::vector<Rational> ts = options.thresholds;
  ts.emplace_back(1, 2);
  for (const auto& t : ts)
    if (t <= 0 || t >= 1) throw DomainError("ThresholdOutOfRange", "thresholds must lie in (0, 1)");
  std::sort(ts.begin(), ts.end(), [](const Rational& x, const Rational& y) { return x > y; });
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  report.count_thresholds.insert(report.count_thresholds.end(), ts.begin(), ts.end());

  ResidueTorusPoint res = a.residue(spec);
  report.residue = res.coords();
  report.relations = relation_basis(res, options.factor_bound);

  std::vector<FamilyMember> members = family.members();
  if (!report.relations.empty()) {
    const Relation& rel = report.relations.front();
    Poly w = witness_polynomial(rel);
    report.witness = WitnessData{rel, w, witness_check(a, rel, spec)};
    if (!family.contains(w)) members.push_back({"witness", w});
  }

  report.members.resize(members.size());
  std::vector<std::exception_ptr> errors(members.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < members.size(); i = next++) {
      try {
        report.members[i] = run_member(a, members[i], report, options, spec);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned nthreads = std::max(1U, std::min<unsigned>(options.threads, members.size()));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (report.witness) {
    for (const auto& m : report.members) {
      if (!(m.poly == report.witness->poly)) continue;
      for (const auto& p : m.series)
        if (p.s > report.witness->check.abs_a)
          throw std::logic_error("witness statistic exceeds |A| at l = " + std::to_string(p.l));
    }
    report.verdict = Verdict::kFailsWithWitness;
    return report;
  }

  const std::size_t nc = report.checkpoints.size();
  bool constant = nc >= 2;
  for (const auto& m : report.members)
    for (std::size_t i = nc / 2 + 1; i < nc && constant; ++i)
      constant = m.series[i].counts == m.series[nc / 2].counts;
  report.verdict = constant ? Verdict::kConsistentEquidistributed : Verdict::kInconclusive;
  return report;
}

}  // namespace berk
