#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include <qseries/qfunctions.hpp>
#include <qseries/report.hpp>

namespace qseries {

// A formal sequence n |-> term(n) of Laurent series together with a proven
// lower bound on the q-valuation of term(n). Bounds must be non-decreasing
// in n and eventually exceed any working precision: infinite sums are cut
// exactly where the bound clears the window, never by magnitude heuristics.
struct SequenceGen {
  std::function<LaurentSeries(exp_t)> term;
  std::function<exp_t(exp_t)> valuation_bound;
};

/* A dilated transform system. For sequences A, D and kernels U, V define
 *
 *   B_n = sum_{j=0}^{floor(dn/m)}  A_{ej} U_{dn-mj} V_{dn+mj},
 *   C_n = sum_{j=ceil(mn/d)}^{inf} D_{ej} U_{dj-mn} V_{dj+mn};
 *
 * then sum_n A_{en} C_n = sum_n B_n D_{en} whenever everything converges
 * formally. d = e = m = 1 is the classical transform. */
struct BaileySystem {
  exp_t d = 1;
  exp_t e = 1;
  exp_t m = 1;
  SequenceGen A, D, U, V;
};

namespace detail {

inline void check_system(const BaileySystem& sys) {
  if (sys.d < 1 || sys.e < 1 || sys.m < 1)
    throw domain_error("bailey: d, e, m must be positive");
  if (sys.m % sys.d != 0)
    throw domain_error("bailey: d must divide m (d=" + std::to_string(sys.d) +
                       ", m=" + std::to_string(sys.m) + ")");
}

// Multiply the three summand factors and insist the result still covers
// [*, prec). On shortfall, name the factor whose precision is the binding
// constraint so misconfigured generators are diagnosable.
inline LaurentSeries summand(const LaurentSeries& a, exp_t ia, const LaurentSeries& u,
                             exp_t iu, const LaurentSeries& v, exp_t iv, exp_t prec,
                             const char* where) {
  auto t = mul(mul(a, u), v);
  if (t.prec() >= prec) return t.truncated(prec);
  auto val = [](const LaurentSeries& s) {
    return s.is_zero() ? s.prec() : s.min_exp();
  };
  struct Probe {
    const char* name;
    exp_t index;
    exp_t reach;
  };
  Probe probes[3] = {
      {"A/D", ia, sat_add(a.prec(), sat_add(val(u), val(v)))},
      {"U", iu, sat_add(u.prec(), sat_add(val(a), val(v)))},
      {"V", iv, sat_add(v.prec(), sat_add(val(a), val(u)))},
  };
  const Probe* worst = &probes[0];
  for (const auto& p : probes)
    if (p.reach < worst->reach) worst = &p;
  throw precision_error(std::string(where) + ": generator " + worst->name +
                        " at index " + std::to_string(worst->index) +
                        " limits the summand to precision " +
                        std::to_string(t.prec()) + " < required " +
                        std::to_string(prec));
}

inline exp_t ceil_div(exp_t a, exp_t b) { return (a + b - 1) / b; }

}  // namespace detail

// B_n: the finite combination of A against the kernels.
inline LaurentSeries compute_B(const BaileySystem& sys, exp_t n, exp_t prec) {
  detail::check_system(sys);
  if (n < 0) throw domain_error("compute_B: negative index");
  auto S = LaurentSeries::zero(prec);
  for (exp_t j = 0; sys.m * j <= sys.d * n; ++j) {
    auto t = detail::summand(sys.A.term(sys.e * j), sys.e * j,
                             sys.U.term(sys.d * n - sys.m * j), sys.d * n - sys.m * j,
                             sys.V.term(sys.d * n + sys.m * j), sys.d * n + sys.m * j,
                             prec, "compute_B");
    S = add(S, t);
  }
  return S;
}

// C_n: the tail combination of D against the kernels, truncated exactly where
// the valuation bounds clear prec. A misconfigured (non-growing) bound trips
// the index-cap guard instead of hanging.
inline LaurentSeries compute_C(const BaileySystem& sys, exp_t n, exp_t prec) {
  detail::check_system(sys);
  if (n < 0) throw domain_error("compute_C: negative index");
  const exp_t j0 = detail::ceil_div(sys.m * n, sys.d);
  const exp_t cap = 10 * std::max<exp_t>(prec, 1);
  auto S = LaurentSeries::zero(prec);
  for (exp_t j = j0;; ++j) {
    exp_t bound = sat_add(sys.D.valuation_bound(sys.e * j),
                          sat_add(sys.U.valuation_bound(sys.d * j - sys.m * n),
                                  sys.V.valuation_bound(sys.d * j + sys.m * n)));
    if (bound >= prec) break;
    if (j - j0 > cap)
      throw guard_error("compute_C: summand valuation bound still below " +
                        std::to_string(prec) + " after " + std::to_string(cap) +
                        " terms (n=" + std::to_string(n) + ")");
    auto t = detail::summand(sys.D.term(sys.e * j), sys.e * j,
                             sys.U.term(sys.d * j - sys.m * n), sys.d * j - sys.m * n,
                             sys.V.term(sys.d * j + sys.m * n), sys.d * j + sys.m * n,
                             prec, "compute_C");
    S = add(S, t);
  }
  return S;
}

// The transform as an executable property: sum_n A_{en} C_n = sum_n B_n D_{en}
// compared coefficientwise on [common valuation, prec).
inline VerificationReport verify_transform(const BaileySystem& sys, exp_t prec) {
  detail::check_system(sys);
  const exp_t cap = 10 * std::max<exp_t>(prec, 1);

  // Valuation floor of C_n, from the first summand's indices and the bounds'
  // monotonicity (D index >= e*j0, U index >= 0, V index >= d*j0 + m*n).
  auto c_floor = [&](exp_t n) {
    exp_t j0 = detail::ceil_div(sys.m * n, sys.d);
    return sat_add(sys.D.valuation_bound(sys.e * j0),
                   sat_add(sys.U.valuation_bound(0),
                           sys.V.valuation_bound(sys.d * j0 + sys.m * n)));
  };
  auto lhs = LaurentSeries::zero(prec);
  for (exp_t n = 0;; ++n) {
    exp_t a_floor = sys.A.valuation_bound(sys.e * n);
    if (sat_add(a_floor, c_floor(n)) >= prec) break;
    if (n > cap)
      throw guard_error("verify_transform: A*C term valuation still below " +
                        std::to_string(prec) + " at n=" + std::to_string(n));
    exp_t need = prec - std::min<exp_t>(a_floor, 0);
    auto t = mul(sys.A.term(sys.e * n), compute_C(sys, n, need));
    if (t.prec() < prec)
      throw precision_error("verify_transform: A generator at index " +
                            std::to_string(sys.e * n) + " limits A*C to precision " +
                            std::to_string(t.prec()) + " < " + std::to_string(prec));
    lhs = add(lhs, t.truncated(prec));
  }

  // B_n has valuation floor A(0) + U(0) + V(dn); the D factor drives decay.
  auto b_floor = [&](exp_t n) {
    return sat_add(sys.A.valuation_bound(0),
                   sat_add(sys.U.valuation_bound(0), sys.V.valuation_bound(sys.d * n)));
  };
  auto rhs = LaurentSeries::zero(prec);
  for (exp_t n = 0;; ++n) {
    exp_t d_floor = sys.D.valuation_bound(sys.e * n);
    if (sat_add(d_floor, b_floor(n)) >= prec) break;
    if (n > cap)
      throw guard_error("verify_transform: B*D term valuation still below " +
                        std::to_string(prec) + " at n=" + std::to_string(n));
    exp_t need = prec - std::min<exp_t>(d_floor, 0);
    auto t = mul(compute_B(sys, n, need), sys.D.term(sys.e * n));
    if (t.prec() < prec)
      throw precision_error("verify_transform: D generator at index " +
                            std::to_string(sys.e * n) + " limits B*D to precision " +
                            std::to_string(t.prec()) + " < " + std::to_string(prec));
    rhs = add(rhs, t.truncated(prec));
  }

  exp_t lo = std::min(lhs.is_zero() ? 0 : lhs.min_exp(),
                      rhs.is_zero() ? 0 : rhs.min_exp());
  auto rep = equal_up_to(lhs, rhs, lo, prec);
  rep.identity = "bailey-transform";
  rep.params = {{"d", std::to_string(sys.d)},
                {"e", std::to_string(sys.e)},
                {"m", std::to_string(sys.m)}};
  return rep;
}

/* The conjugate-pair relation behind every C_n evaluation here:
 *
 *   sum_{k>=n} a^k q^{k^2} / ( (q)_{k-n} (aq)_{k+n} )  =  a^n q^{n^2} / (aq)_inf.
 */
inline VerificationReport conjugate_pair_check(const Monomial& a, exp_t n, exp_t prec) {
  if (a.exp < 0)
    throw domain_error("conjugate_pair_check: parameter must have nonnegative valuation");
  if (n < 0) throw domain_error("conjugate_pair_check: negative index");
  auto lhs = LaurentSeries::zero(prec);
  for (exp_t k = n; k * k + k * a.exp < prec; ++k) {
    Monomial lead = a.pow(k);
    auto t = LaurentSeries::one(prec);
    t = div_poch_finite(t, Monomial(1, 1), 1, k - n);
    t = div_poch_finite(t, a.times(Monomial(1, 1)), 1, k + n);
    t = t.shifted(k * k + lead.exp).scaled(lead.sign);
    lhs = add(lhs, t.truncated(prec));
  }
  Monomial lead = a.pow(n);
  auto rhs = div_poch_infinite(LaurentSeries::one(prec), a.times(Monomial(1, 1)), 1)
                 .shifted(n * n + lead.exp)
                 .scaled(lead.sign)
                 .truncated(prec);
  exp_t lo = std::min(lhs.is_zero() ? 0 : lhs.min_exp(),
                      rhs.is_zero() ? 0 : rhs.min_exp());
  auto rep = equal_up_to(lhs, rhs, lo, prec);
  rep.identity = "conjugate-pair";
  rep.params = {{"a", a.str()}, {"n", std::to_string(n)}};
  return rep;
}

namespace detail {

// Shared numerator-over-denominator builder for the A sequences below: all
// have the shape  lead * q^{shift} * (exact binomial product) / (Pochhammer
// denominators with nonnegative exponents).
class ASeqBuilder {
 public:
  explicit ASeqBuilder(exp_t prec) : prec_(prec) {}
  ASeqBuilder& lead(Monomial m) {
    sign_ *= m.sign;
    shift_ += m.exp;
    return *this;
  }
  ASeqBuilder& shift(exp_t e) {
    shift_ += e;
    return *this;
  }
  ASeqBuilder& sign(int s) {
    sign_ *= s;
    return *this;
  }
  ASeqBuilder& numer(const Monomial& f, exp_t step, exp_t n) {
    numer_ = mul(numer_, poch_finite(f, step, n));
    return *this;
  }
  ASeqBuilder& denom(const Monomial& f, exp_t step, exp_t n) {
    denoms_.push_back({f, step, n});
    return *this;
  }
  LaurentSeries build() const {
    auto top = numer_.shifted(shift_).scaled(sign_);
    if (top.is_zero()) return LaurentSeries::zero(prec_);
    exp_t pad = std::max<exp_t>(0, -top.min_exp());
    auto rest = LaurentSeries::one(prec_ + pad);
    for (const auto& d : denoms_)
      rest = div_poch_finite(rest, d.f, d.step, d.n);
    return mul(top, rest).truncated(prec_);
  }

 private:
  struct Denom {
    Monomial f;
    exp_t step;
    exp_t n;
  };
  exp_t prec_;
  int sign_ = 1;
  exp_t shift_ = 0;
  LaurentSeries numer_ = LaurentSeries::one();
  std::vector<Denom> denoms_;
};

inline SequenceGen unit_kernel(exp_t prec) {
  return {[prec](exp_t k) {
            return div_poch_finite(LaurentSeries::one(prec), Monomial(1, 1), 1, k);
          },
          [](exp_t) { return exp_t{0}; }};
}

inline SequenceGen poch_kernel(Monomial base, exp_t prec) {
  return {[base, prec](exp_t k) {
            return div_poch_finite(LaurentSeries::one(prec), base, 1, k);
          },
          [](exp_t) { return exp_t{0}; }};
}

// D_n = s^n q^{n^2} as a sequence of exact monomials on the window.
inline SequenceGen theta_diagonal(Monomial s, exp_t prec) {
  return {[s, prec](exp_t n) {
            Monomial lead = s.pow(n);
            exp_t e = n * n + lead.exp;
            if (e >= prec) return LaurentSeries::zero(prec);
            return LaurentSeries::monomial(lead.sign, e, prec);
          },
          [s](exp_t n) { return n * n + n * s.exp; }};
}

inline void require_nonneg_val(const Monomial& p, const char* what) {
  if (p.exp < 0)
    throw domain_error(std::string(what) + " must have nonnegative valuation, got " +
                       p.str());
}

}  // namespace detail

/* m=2 system. A_n is the quadratic summand
 *
 *   a^{2n} g^n q^{2n^2} (1-aq^{2n}) (a;q)_n (1/g;q)_n / ( (1-a) (q)_n (agq;q)_n ),
 *
 * with (a;q)_n/(1-a) folded to (aq;q)_{n-1}; D_n = a^{2n} q^{n^2};
 * U_n = 1/(q)_n; V_n = 1/(a^2 q;q)_n. */
inline BaileySystem quadratic_system(const Monomial& a, const Monomial& g, exp_t prec) {
  detail::require_nonneg_val(a, "quadratic_system: a");
  detail::require_nonneg_val(g, "quadratic_system: g");
  BaileySystem sys;
  sys.d = sys.e = 1;
  sys.m = 2;
  sys.A = {[a, g, prec](exp_t n) {
             if (n == 0) return LaurentSeries::one(prec);
             detail::ASeqBuilder b(prec);
             b.lead(a.pow(2 * n)).lead(g.pow(n)).shift(2 * n * n);
             b.numer(a.times(Monomial(1, 2 * n)), 1, 1);  // 1 - a q^{2n}
             b.numer(a.times(Monomial(1, 1)), 1, n - 1);
             b.numer(g.inverse(), 1, n);
             b.denom(Monomial(1, 1), 1, n);
             b.denom(a.times(g).times(Monomial(1, 1)), 1, n);
             return b.build();
           },
           [a, g](exp_t n) {
             return 2 * n * n + 2 * n * a.exp + n * g.exp +
                    poch_val_floor(-g.exp, 1, n);
           }};
  sys.D = detail::theta_diagonal(a.pow(2), prec);
  sys.U = detail::unit_kernel(prec);
  sys.V = detail::poch_kernel(a.pow(2).times(Monomial(1, 1)), prec);
  return sys;
}

/* m=4 system with free parameter b. A_n is
 *
 *   b^n q^{8n^2-4n} (1-a^2 q^{16n}) (a^2;q^8)_n (a^2 q^4/b;q^8)_n
 *     / ( (1-a^2) (q^8;q^8)_n (bq^4;q^8)_n ),
 *
 * with (a^2;q^8)_n/(1-a^2) folded to (a^2 q^8;q^8)_{n-1}; D_n = a^n q^{n^2};
 * U_n = 1/(q)_n; V_n = 1/(aq;q)_n. */
inline BaileySystem quartic_system(const Monomial& a, const Monomial& b, exp_t prec) {
  detail::require_nonneg_val(a, "quartic_system: a");
  detail::require_nonneg_val(b, "quartic_system: b");
  BaileySystem sys;
  sys.d = sys.e = 1;
  sys.m = 4;
  Monomial ratio = a.pow(2).times(Monomial(1, 4)).times(b.inverse());
  sys.A = {[a, b, ratio, prec](exp_t n) {
             if (n == 0) return LaurentSeries::one(prec);
             detail::ASeqBuilder bl(prec);
             bl.lead(b.pow(n)).shift(8 * n * n - 4 * n);
             bl.numer(a.pow(2).times(Monomial(1, 16 * n)), 1, 1);
             bl.numer(a.pow(2).times(Monomial(1, 8)), 8, n - 1);
             bl.numer(ratio, 8, n);
             bl.denom(Monomial(1, 8), 8, n);
             bl.denom(b.times(Monomial(1, 4)), 8, n);
             return bl.build();
           },
           [a, b, ratio](exp_t n) {
             return 8 * n * n - 4 * n + n * b.exp + poch_val_floor(ratio.exp, 8, n);
           }};
  sys.D = detail::theta_diagonal(a, prec);
  sys.U = detail::unit_kernel(prec);
  sys.V = detail::poch_kernel(a.times(Monomial(1, 1)), prec);
  return sys;
}

/* m=4 alternating system (the b-free companion). A_n is
 *
 *   (-1)^n q^{8n^2-8n} (1-a^4 q^{32n}) (a^4;q^16)_n / ( (1-a^4) (q^16;q^16)_n ),
 *
 * folded as above; D, U, V as in quartic_system. */
inline BaileySystem quartic_alternating_system(const Monomial& a, exp_t prec) {
  detail::require_nonneg_val(a, "quartic_alternating_system: a");
  BaileySystem sys;
  sys.d = sys.e = 1;
  sys.m = 4;
  sys.A = {[a, prec](exp_t n) {
             if (n == 0) return LaurentSeries::one(prec);
             detail::ASeqBuilder b(prec);
             b.sign(n % 2 ? -1 : 1).shift(8 * n * n - 8 * n);
             b.numer(a.pow(4).times(Monomial(1, 32 * n)), 1, 1);
             b.numer(a.pow(4).times(Monomial(1, 16)), 16, n - 1);
             b.denom(Monomial(1, 16), 16, n);
             return b.build();
           },
           [](exp_t n) { return 8 * n * n - 8 * n; }};
  sys.D = detail::theta_diagonal(a, prec);
  sys.U = detail::unit_kernel(prec);
  sys.V = detail::poch_kernel(a.times(Monomial(1, 1)), prec);
  return sys;
}

/* m=6 system. A_n is
 *
 *   (-1)^n a^{2n} q^{18n^2-6n} (1-a^2 q^{24n}) (a^2;q^12)_n
 *     / ( (1-a^2) (q^12;q^12)_n ),
 *
 * folded as above; D, U, V as in quartic_system. */
inline BaileySystem sextic_system(const Monomial& a, exp_t prec) {
  detail::require_nonneg_val(a, "sextic_system: a");
  BaileySystem sys;
  sys.d = sys.e = 1;
  sys.m = 6;
  sys.A = {[a, prec](exp_t n) {
             if (n == 0) return LaurentSeries::one(prec);
             detail::ASeqBuilder b(prec);
             b.sign(n % 2 ? -1 : 1).lead(a.pow(2 * n)).shift(18 * n * n - 6 * n);
             b.numer(a.pow(2).times(Monomial(1, 24 * n)), 1, 1);
             b.numer(a.pow(2).times(Monomial(1, 12)), 12, n - 1);
             b.denom(Monomial(1, 12), 12, n);
             return b.build();
           },
           [a](exp_t n) { return 18 * n * n - 6 * n + 2 * n * a.exp; }};
  sys.D = detail::theta_diagonal(a, prec);
  sys.U = detail::unit_kernel(prec);
  sys.V = detail::poch_kernel(a.times(Monomial(1, 1)), prec);
  return sys;
}

}  // namespace qseries
