#pragma once

#include <random>

#include "berk/equidist.hpp"

namespace berk::testing {

/// Seeded source of small random field elements and polynomials.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(unsigned one_in = 2) { return rng_() % one_in == 0; }

  TPoly tpoly(long max_degree, long bound = 4) {
    std::vector<Rational> cs;
    long d = integer(0, max_degree);
    for (long i = 0; i <= d; ++i) cs.emplace_back(integer(-bound, bound));
    return TPoly(std::move(cs));
  }

  /// Random nonzero element; t-adic values mix numerator/denominator
  /// polynomials, p-adic values are small rationals rich in factors of p.
  Scalar nonzero(const FieldSpec& spec) {
    for (;;) {
      Scalar x = any(spec);
      if (!x.is_zero()) return x;
    }
  }

  Scalar any(const FieldSpec& spec) {
    if (spec.is_padic()) {
      long p = static_cast<long>(spec.prime());
      Integer num(integer(-6, 6));
      Integer den(integer(1, 5));
      for (long k = integer(0, 2); k > 0; --k) num *= p;
      for (long k = integer(0, 1); k > 0; --k) den *= p;
      Rational q(num, den);
      q.canonicalize();
      return Scalar(q);
    }
    TPoly num = tpoly(3);
    if (coin(3)) {
      TPoly den = tpoly(2);
      if (den.is_zero()) den = TPoly(1);
      return Scalar(num, den);
    }
    return Scalar(num);
  }

  /// Element with valuation >= 0.
  Scalar integral(const FieldSpec& spec) {
    for (;;) {
      Scalar x = any(spec);
      if (valuation(x, spec) >= Valuation(0)) return x;
    }
  }

  Poly poly(std::size_t nvars, unsigned max_degree, const FieldSpec& spec, unsigned max_terms = 5) {
    Poly f(nvars);
    unsigned n = static_cast<unsigned>(integer(1, max_terms));
    for (unsigned k = 0; k < n; ++k) {
      Exponents e(nvars, 0);
      unsigned d = static_cast<unsigned>(integer(0, max_degree));
      for (unsigned i = 0; i < d; ++i) ++e[static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1))];
      f.add_term(e, any(spec));
    }
    return f;
  }

  Poly homogeneous(std::size_t nvars, unsigned degree, const FieldSpec& spec, unsigned max_terms = 4) {
    for (;;) {
      Poly f(nvars);
      unsigned n = static_cast<unsigned>(integer(1, max_terms));
      for (unsigned k = 0; k < n; ++k) {
        Exponents e(nvars, 0);
        for (unsigned i = 0; i < degree; ++i) ++e[static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1))];
        f.add_term(e, any(spec));
      }
      if (!f.is_zero()) return f;
    }
  }

  std::vector<Scalar> point(std::size_t nvars, const FieldSpec& spec) {
    for (;;) {
      std::vector<Scalar> v;
      for (std::size_t i = 0; i < nvars; ++i) v.push_back(any(spec));
      for (const auto& x : v)
        if (!x.is_zero()) return v;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};


}  // namespace berk::testing
