#include "berk/multdep.hpp"

#include <unordered_map>

#include "berk/errors.hpp"
#include "berk/lattice.hpp"

namespace berk {

ResidueTorusPoint::ResidueTorusPoint(std::vector<ResidueScalar> coords, ResidueField field)
    : coords_(std::move(coords)), field_(field) {
  for (auto& c : coords_) {
    c = field_.from_rational(c);
    if (c == 0) throw DomainError("NotInTorus", "torus coordinates must be nonzero");
  }
}

ResidueScalar ResidueTorusPoint::monomial(const std::vector<std::int64_t>& e) const {
  if (e.size() != coords_.size())
    throw DomainError("ArityMismatch", "exponent vector length differs from torus dimension");
  ResidueScalar acc(1);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) acc = field_.mul(acc, field_.pow(coords_[i], e[i]));
  return acc;
}

ResidueTorusPoint ResidueTorusPoint::power(std::int64_t k) const {
  std::vector<ResidueScalar> out;
  for (const auto& c : coords_) out.push_back(field_.pow(c, k));
  return ResidueTorusPoint(std::move(out), field_);
}

Relation Relation::certify(std::vector<std::int64_t> exponents, const ResidueTorusPoint& a) {
  bool nonzero = false;
  for (auto e : exponents) nonzero = nonzero || e != 0;
  if (!nonzero) throw DomainError("ZeroRelation", "relation vector must be nonzero");
  if (a.monomial(exponents) != 1)
    throw DomainError("RelationNotSatisfied", "product of powers is not 1");
  return Relation(std::move(exponents));
}

// ------------------------------------------------------------ factoring

namespace {

void strip(Integer& n, unsigned long bound, std::int64_t sign_of_exp,
           std::map<Integer, std::int64_t>& out) {
  auto take = [&](unsigned long d) {
    Integer dz(d);
    if (!mpz_divisible_ui_p(n.get_mpz_t(), d)) return;
    Integer rest;
    auto k = static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), dz.get_mpz_t()));
    n = rest;
    out[dz] += sign_of_exp * k;
    if (out[dz] == 0) out.erase(dz);
  };
  if (bound >= 2) take(2);
  for (unsigned long d = 3; d <= bound && n > 1; d += 2) {
    if (Integer(d) * d > n) {
      // What remains is prime.
      if (n <= bound) {
        out[n] += sign_of_exp;
        if (out[n] == 0) out.erase(n);
        n = 1;
      }
      break;
    }
    take(d);
  }
}

}  // namespace

FactorSignature factor_rational(const Rational& q, unsigned long bound) {
  if (q == 0) throw DomainError("ZeroArgument", "cannot factor zero");
  FactorSignature sig;
  sig.sign = q < 0 ? -1 : 1;
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  strip(num, bound, +1, sig.exponents);
  strip(den, bound, -1, sig.exponents);
  if (num > 1 || den > 1) {
    Integer rest = num > 1 ? num : den;
    throw FactorBoundExceeded("cofactor " + rest.get_str() + " has no prime factor <= " +
                              std::to_string(bound));
  }
  return sig;
}

// ------------------------------------------------------ relation lattice

namespace {

std::vector<std::int64_t> to_int64(const IntVector& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw DomainError("Overflow", "relation entry exceeds 64 bits");
    out.push_back(x.get_si());
  }
  return out;
}

std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> ps;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    ps.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p) {
  return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % p);
}

unsigned long powmod(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1 % p;
  while (e > 0) {
    if (e & 1UL) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

unsigned long primitive_root(unsigned long p) {
  if (p == 2) return 1;
  auto ps = prime_factors(p - 1);
  for (unsigned long g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : ps) ok = ok && powmod(g, (p - 1) / q, p) != 1;
    if (ok) return g;
  }
  throw DomainError("NotPrime", "no primitive root");
}

// Baby-step giant-step log of x to base g in F_p^x.
unsigned long discrete_log(unsigned long g, unsigned long x, unsigned long p) {
  unsigned long n = p - 1;
  unsigned long m = 1;
  while (m * m < n) ++m;
  std::unordered_map<unsigned long, unsigned long> baby;
  unsigned long cur = 1;
  for (unsigned long j = 0; j < m; ++j) {
    baby.try_emplace(cur, j);
    cur = mulmod(cur, g, p);
  }
  unsigned long giant = powmod(powmod(g, m, p), p - 2, p);
  unsigned long y = x;
  for (unsigned long i = 0; i <= m; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) return (i * m + it->second) % n;
    y = mulmod(y, giant, p);
  }
  throw DomainError("NotInTorus", "element has no discrete log");
}

}  // namespace

std::vector<Relation> relation_basis(const ResidueTorusPoint& a, unsigned long bound) {
  const std::size_t n = a.dim();
  // One row per unknown l_1..l_N plus an auxiliary k; each column is a
  // linear condition sum_i l_i * row_i[col] + k * aux[col] = 0.
  std::vector<IntVector> rows;
  std::size_t ncols = 0;
  if (a.field().is_rational()) {
    std::vector<FactorSignature> sigs;
    std::map<Integer, std::size_t> prime_col;
    for (const auto& c : a.coords()) {
      sigs.push_back(factor_rational(c, bound));
      for (const auto& [p, e] : sigs.back().exponents) prime_col.try_emplace(p, 0);
    }
    for (auto& [p, col] : prime_col) col = ncols++;
    const std::size_t sign_col = ncols++;
    for (const auto& sig : sigs) {
      IntVector row(ncols);
      for (const auto& [p, e] : sig.exponents) row[prime_col[p]] = e;
      row[sign_col] = sig.sign < 0 ? 1 : 0;
      rows.push_back(std::move(row));
    }
    IntVector aux(ncols);
    aux[sign_col] = 2;  // -1 has order 2
    rows.push_back(std::move(aux));
  } else {
    const unsigned long p = a.field().characteristic();
    const unsigned long g = primitive_root(p);
    ncols = 1;
    for (const auto& c : a.coords())
      rows.push_back(IntVector{Integer(discrete_log(g, c.get_num().get_ui(), p))});
    rows.push_back(IntVector{Integer(p - 1)});
  }

  std::vector<IntVector> projected;
  for (const auto& v : left_kernel(rows, ncols))
    projected.emplace_back(v.begin(), v.begin() + static_cast<long>(n));
  std::vector<Relation> out;
  for (const auto& v : hermite_basis(std::move(projected), n))
    out.push_back(Relation::certify(to_int64(v), a));
  return out;
}

bool is_nondegenerate(const ResidueTorusPoint& a, unsigned long bound) {
  return relation_basis(a, bound).empty();
}

bool subgroup_member(const ResidueTorusPoint& a,
                     const std::vector<std::vector<std::int64_t>>& basis) {
  for (const auto& v : basis)
    if (a.monomial(v) != 1) return false;
  return true;
}

std::vector<std::int64_t> orbit_hits(const ResidueTorusPoint& a, const Hypersurface& w,
                                     std::int64_t jmax) {
  const ResiduePoly& f = w.equation();
  if (f.nvars() != a.dim() + 1)
    throw DomainError("ArityMismatch", "hypersurface arity must be torus dimension + 1");
  const ResidueField& field = a.field();
  std::vector<ResidueScalar> point(a.dim() + 1, ResidueScalar(1));
  std::vector<std::int64_t> hits;
  for (std::int64_t j = 1; j <= jmax; ++j) {
    for (std::size_t i = 0; i < a.dim(); ++i) point[i + 1] = field.mul(point[i + 1], a.coords()[i]);
    if (f.evaluate(point) == 0) hits.push_back(j);
  }
  return hits;
}

}  // namespace berk
