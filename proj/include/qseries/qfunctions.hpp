#pragma once
// Standard q-objects: finite/infinite Pochhammer products, Gaussian
// polynomials, partition and overpartition tables, bilateral theta sums and
// their triple-product forms.

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace qseries {

// Parameter substitution value sign * q^exp. Parameters are always
// specialized to signed monomials; zero is never a Monomial (the post-limit
// forms of vanishing-parameter identities are registered separately).
struct Monomial {
  int sign = 1;  // +1 or -1
  exp_t exp = 0;

  Monomial() = default;
  Monomial(int s, exp_t e) : sign(s), exp(e) {
    if (s != 1 && s != -1)
      throw domain_error("Monomial: sign must be +1 or -1, got " + std::to_string(s));
  }

  Monomial pow(exp_t k) const {
    if (k < 0) throw domain_error("Monomial::pow: negative power");
    return Monomial((k % 2 == 0) ? 1 : sign, exp * k);
  }
  Monomial times(const Monomial& o) const { return Monomial(sign * o.sign, exp + o.exp); }
  Monomial inverse() const { return Monomial(sign, -exp); }
  bool operator==(const Monomial& o) const { return sign == o.sign && exp == o.exp; }

  LaurentSeries series(exp_t prec = kPrecUnbounded) const {
    return LaurentSeries::monomial(sign, exp, prec);
  }

  // "q", "-q", "q^3", "-q^-1", "1", "-1"
  std::string str() const {
    std::string s = sign < 0 ? "-" : "";
    if (exp == 0) return s + "1";
    s += "q";
    if (exp != 1) s += "^" + std::to_string(exp);
    return s;
  }

  static Monomial parse(const std::string& text) {
    std::string t = text;
    int sg = 1;
    if (!t.empty() && t[0] == '-') {
      sg = -1;
      t = t.substr(1);
    } else if (!t.empty() && t[0] == '+') {
      t = t.substr(1);
    }
    if (t == "1") return Monomial(sg, 0);
    if (t == "q") return Monomial(sg, 1);
    if (t.size() >= 2 && t[0] == 'q' && t[1] == '^') {
      try {
        std::size_t used = 0;
        long long e = std::stoll(t.substr(2), &used);
        if (used == t.size() - 2) return Monomial(sg, e);
      } catch (const std::exception&) {
      }
    }
    throw domain_error("Monomial::parse: cannot read '" + text +
                       "' (expected 1, -1, q, -q, q^E or -q^E)");
  }
};

// (f; q^step)_n = prod_{j=0}^{n-1} (1 - f q^{step j}). Exact by default; a
// finite prec truncates, and factors with negative exponents are compensated
// so the stated precision is honored.
inline LaurentSeries poch_finite(const Monomial& f, exp_t step, exp_t n,
                                 exp_t prec = kPrecUnbounded) {
  if (step < 1) throw domain_error("poch_finite: step must be positive");
  if (n < 0) throw domain_error("poch_finite: negative length");
  exp_t depth = 0;
  if (prec < kPrecUnbounded)
    for (exp_t j = 0; j < n; ++j) depth += std::max<exp_t>(0, -(f.exp + step * j));
  LaurentSeries out = LaurentSeries::one(sat_add(prec, depth));
  for (exp_t j = 0; j < n; ++j) out = out.mul_binomial(-f.sign, f.exp + step * j);
  return out.truncated(prec);
}

// (f; q^step)_infinity below prec: every factor with exponent < prec enters.
inline LaurentSeries poch_infinite(const Monomial& f, exp_t step, exp_t prec) {
  if (step < 1) throw domain_error("poch_infinite: step must be positive");
  if (prec >= kPrecUnbounded)
    throw precision_error("poch_infinite: requires a finite precision");
  exp_t depth = 0;
  for (exp_t j = 0; f.exp + step * j < 0; ++j) depth += -(f.exp + step * j);
  LaurentSeries out = LaurentSeries::one(prec + depth);
  for (exp_t j = 0; f.exp + step * j < out.prec(); ++j)
    out = out.mul_binomial(-f.sign, f.exp + step * j);
  return out.truncated(prec);
}

// s / (f; q^step)_n, dividing out one binomial factor at a time by exact
// back-substitution. Factors with negative exponents raise the result's
// precision (see div_binomial); callers relying on the window [v, prec(s))
// can always truncate afterwards.
inline LaurentSeries div_poch_finite(LaurentSeries s, const Monomial& f,
                                     exp_t step, exp_t n) {
  if (step < 1) throw domain_error("div_poch_finite: step must be positive");
  if (n < 0) throw domain_error("div_poch_finite: negative length");
  for (exp_t j = 0; j < n; ++j) s = s.div_binomial(-f.sign, f.exp + step * j);
  return s;
}

// s / (f; q^step)_infinity: factors are divided out until their exponent
// clears the running precision, beyond which they act as the identity.
inline LaurentSeries div_poch_infinite(LaurentSeries s, const Monomial& f,
                                       exp_t step) {
  if (step < 1) throw domain_error("div_poch_infinite: step must be positive");
  if (s.exact() && !s.is_zero())
    throw precision_error("div_poch_infinite: requires a finite precision");
  for (exp_t j = 0; f.exp + step * j < s.prec(); ++j)
    s = s.div_binomial(-f.sign, f.exp + step * j);
  return s;
}

// sum_{j<n} min(0, e0 + step j): the exact contribution of a finite
// Pochhammer product's negative-exponent factors to its q-valuation.
inline exp_t poch_val_floor(exp_t e0, exp_t step, exp_t n) {
  if (step < 1) throw domain_error("poch_val_floor: step must be positive");
  if (n <= 0 || e0 >= 0) return 0;
  exp_t t = std::min(n, (-e0 + step - 1) / step);  // count of negative factors
  return t * e0 + step * t * (t - 1) / 2;
}

namespace detail {
// Gaussian polynomials in base q, cached as one growing Pascal triangle.
// Row N is built from row N-1 by [N,M] = [N-1,M-1] + q^M [N-1,M].
inline const LaurentSeries qbinomial_cached(exp_t N, exp_t M) {
  static std::mutex mu;
  static std::vector<std::vector<LaurentSeries>> rows;  // rows[n][m], m <= n
  std::lock_guard<std::mutex> lock(mu);
  if (rows.empty()) rows.push_back({LaurentSeries::one()});
  while (exp_t(rows.size()) <= N) {
    exp_t n = exp_t(rows.size());
    const auto& prev = rows.back();
    std::vector<LaurentSeries> row(static_cast<std::size_t>(n) + 1);
    row[0] = LaurentSeries::one();
    row[static_cast<std::size_t>(n)] = LaurentSeries::one();
    for (exp_t m = 1; m < n; ++m)
      row[static_cast<std::size_t>(m)] =
          add(prev[static_cast<std::size_t>(m - 1)],
              prev[static_cast<std::size_t>(m)].shifted(m));
    rows.push_back(std::move(row));
  }
  return rows[static_cast<std::size_t>(N)][static_cast<std::size_t>(M)];
}
}  // namespace detail

// Gaussian coefficient [N, M] in q^base_step; zero series when M < 0 or
// M > N (the definition's "otherwise" branch).
inline LaurentSeries qbinomial(exp_t N, exp_t M, exp_t base_step = 1) {
  if (N < 0) throw domain_error("qbinomial: N must be nonnegative");
  if (base_step < 1) throw domain_error("qbinomial: base_step must be positive");
  if (M < 0 || M > N) return LaurentSeries::zero();
  LaurentSeries base = detail::qbinomial_cached(N, M);
  if (base_step == 1) return base;
  std::vector<Coeff> spread(static_cast<std::size_t>(base.degree_known() * base_step + 1));
  for (const auto& [e, c] : base.terms(0, base.degree_known() + 1))
    spread[static_cast<std::size_t>(e * base_step)] = c;
  return LaurentSeries::from_coeffs(0, std::move(spread));
}

enum class PartitionKind { plain, overpartition };
enum class TableProvenance { recurrence, series_expansion, enumeration };

struct PartitionTable {
  PartitionKind kind = PartitionKind::plain;
  exp_t max_n = 0;
  std::vector<Coeff> values;  // index n -> p(n) or pbar(n)
  TableProvenance provenance = TableProvenance::recurrence;

  // Negative arguments read as 0 (the convention every alternating sum in
  // this library relies on); arguments beyond max_n are an error.
  const Coeff& at(exp_t n) const {
    static const Coeff kZero{};
    if (n < 0) return kZero;
    if (n > max_n)
      throw domain_error("PartitionTable::at: " + std::to_string(n) +
                         " exceeds table size " + std::to_string(max_n));
    return values[static_cast<std::size_t>(n)];
  }
};

// p(0..max_n) by the pentagonal-number recurrence
// p(n) = sum_{k>=1} (-1)^{k-1} [ p(n - k(3k-1)/2) + p(n - k(3k+1)/2) ].
inline PartitionTable partition_table(exp_t max_n) {
  if (max_n < 0) throw domain_error("partition_table: negative max_n");
  PartitionTable t;
  t.kind = PartitionKind::plain;
  t.max_n = max_n;
  t.provenance = TableProvenance::recurrence;
  t.values.assign(static_cast<std::size_t>(max_n) + 1, Coeff(0));
  t.values[0] = 1;
  for (exp_t n = 1; n <= max_n; ++n) {
    Coeff acc(0);
    for (exp_t k = 1;; ++k) {
      exp_t g1 = k * (3 * k - 1) / 2;
      exp_t g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      if (k % 2 == 1) {
        acc += t.values[static_cast<std::size_t>(n - g1)];
        if (g2 <= n) acc += t.values[static_cast<std::size_t>(n - g2)];
      } else {
        acc -= t.values[static_cast<std::size_t>(n - g1)];
        if (g2 <= n) acc -= t.values[static_cast<std::size_t>(n - g2)];
      }
    }
    t.values[static_cast<std::size_t>(n)] = acc;
  }
  return t;
}

// pbar(0..max_n) by expanding (-q;q)_inf / (q;q)_inf.
inline PartitionTable overpartition_table(exp_t max_n) {
  if (max_n < 0) throw domain_error("overpartition_table: negative max_n");
  exp_t prec = max_n + 1;
  LaurentSeries gf = mul(poch_infinite(Monomial(-1, 1), 1, prec),
                         invert(poch_infinite(Monomial(1, 1), 1, prec)));
  PartitionTable t;
  t.kind = PartitionKind::overpartition;
  t.max_n = max_n;
  t.provenance = TableProvenance::series_expansion;
  t.values.reserve(static_cast<std::size_t>(max_n) + 1);
  for (exp_t n = 0; n <= max_n; ++n) t.values.push_back(gf.coefficient_at(n));
  return t;
}

// Bilateral alternating theta sum sum_{n in Z} (-1)^n q^{(M n^2 + n)/2} for
// odd M >= 1, truncated at prec. For M = 1 the n and -(n+1) terms cancel
// pairwise and the sum is 0.
inline LaurentSeries theta_sum_odd_M(exp_t M, exp_t prec) {
  if (M < 1 || M % 2 == 0)
    throw domain_error("theta_sum_odd_M: M must be odd and positive, got " +
                       std::to_string(M));
  if (prec >= kPrecUnbounded)
    throw precision_error("theta_sum_odd_M: requires a finite precision");
  std::vector<Coeff> acc(prec > 0 ? static_cast<std::size_t>(prec) : 0, Coeff(0));
  for (exp_t t = 0;; ++t) {
    exp_t lo = (M * t * t - t) / 2;  // exponent for n = -t
    exp_t hi = (M * t * t + t) / 2;  // exponent for n = +t
    if (lo >= prec) break;
    int s = (t % 2 == 0) ? 1 : -1;
    if (hi < prec) acc[static_cast<std::size_t>(hi)] += s;
    if (t > 0 && lo < prec) acc[static_cast<std::size_t>(lo)] += s;
  }
  return LaurentSeries::from_coeffs(0, std::move(acc), prec);
}

// (q^{(M-1)/2}; q^M)_inf (q^{(M+1)/2}; q^M)_inf (q^M; q^M)_inf — the triple
// product evaluation of the bilateral sum above, odd M >= 3.
inline LaurentSeries triple_product_rhs(exp_t M, exp_t prec) {
  if (M < 3 || M % 2 == 0)
    throw domain_error("triple_product_rhs: M must be odd and >= 3, got " +
                       std::to_string(M));
  LaurentSeries out = poch_infinite(Monomial(1, (M - 1) / 2), M, prec);
  out = mul(out, poch_infinite(Monomial(1, (M + 1) / 2), M, prec));
  out = mul(out, poch_infinite(Monomial(1, M), M, prec));
  return out;
}

}  // namespace qseries
