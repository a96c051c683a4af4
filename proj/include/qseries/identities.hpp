#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qseries/bailey.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace qseries {

enum class Side { lhs, rhs };

inline Side side_from_string(const std::string& s) {
  if (s == "lhs") return Side::lhs;
  if (s == "rhs") return Side::rhs;
  throw domain_error("side must be \"lhs\" or \"rhs\", got \"" + s + "\"");
}

// Named arguments for a registry entry: integers (truncation orders, finite
// sum lengths, moduli) and signed monomials +-q^e (series parameters).
class Params {
 public:
  Params() = default;

  Params& set(const std::string& name, const Monomial& value) {
    monomials_[name] = value;
    return *this;
  }
  Params& set(const std::string& name, exp_t value) {
    integers_[name] = value;
    return *this;
  }

  bool has_integer(const std::string& name) const {
    return integers_.count(name) != 0;
  }
  bool has_monomial(const std::string& name) const {
    return monomials_.count(name) != 0;
  }

  exp_t integer(const std::string& name) const {
    auto it = integers_.find(name);
    if (it == integers_.end())
      throw domain_error("missing integer parameter '" + name + "'");
    return it->second;
  }
  const Monomial& monomial(const std::string& name) const {
    auto it = monomials_.find(name);
    if (it == monomials_.end())
      throw domain_error("missing monomial parameter '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : integers_) out.push_back(k);
    for (const auto& [k, v] : monomials_) out.push_back(k);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t size() const { return integers_.size() + monomials_.size(); }

  // Name-sorted (name, value) pairs for reports and CLI output.
  std::vector<std::pair<std::string, std::string>> rendered() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : integers_) out.emplace_back(k, std::to_string(v));
    for (const auto& [k, v] : monomials_) out.emplace_back(k, v.str());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::map<std::string, exp_t> integers_;
  std::map<std::string, Monomial> monomials_;
};

struct ParamSpec {
  enum class Kind { integer, monomial };
  std::string name;
  Kind kind = Kind::integer;
  std::string description;
};

using SideBuilder = std::function<LaurentSeries(const Params&, exp_t)>;

struct IdentityDescriptor {
  std::string id;
  std::string summary;    // what the identity states, one line
  std::string reference;  // attribution or content tag for the result
  std::vector<ParamSpec> schema;
  std::vector<Params> grid;  // sampled parameter grid used for verification
  exp_t default_order = 100;
  std::function<void(const Params&)> validate;  // value constraints
  SideBuilder lhs;
  SideBuilder rhs;
  std::string notes;  // registered-form details and known near-miss variants
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw domain_error(msg);
}

// Theta-style numerators over the Euler product:
//   (sum of s_i q^{e_i}) / (q;q)_infinity, truncated below W.
inline LaurentSeries theta_over_euler(
    const std::vector<std::pair<exp_t, int>>& family, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (auto [e, s] : family)
    if (e < W) S = add(S, LaurentSeries::from_coeffs(e, {Coeff(s)}).truncated(W));
  return div_poch_infinite(S, Monomial(1, 1), 1);
}

// The double series sum_{n>=0} sum_{k=0}^n q^{n^2+k^2} [n,k]_q / (q;q)_{2n},
// the common combinatorial side of the mod-13 evaluations.
inline LaurentSeries double_sum_13(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; n * n < W; ++n) {
    auto inner = LaurentSeries::zero();
    for (exp_t k = 0; k <= n; ++k)
      inner = add(inner, qbinomial(n, k).shifted(k * k));
    auto numer = inner.shifted(n * n);
    auto rest = div_poch_finite(LaurentSeries::one(W), Monomial(1, 1), 1, 2 * n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// (-q;q)_inf / (q;q)_inf * (1 + 2 sum_{j=1}^k (-1)^j q^{j^2}): the truncated
// Gauss square theta over the overpartition weight, shared lhs of the two
// square-truncation entries.
inline LaurentSeries overp_square_lhs(exp_t k, exp_t W) {
  auto t = LaurentSeries::from_coeffs(0, {Coeff(1)});
  for (exp_t j = 1; j <= k && j * j < W; ++j)
    t = add(t, LaurentSeries::from_coeffs(j * j, {Coeff(j % 2 ? -2 : 2)}));
  auto L = mul(t, poch_infinite(Monomial(-1, 1), 1, W));
  return div_poch_infinite(L, Monomial(1, 1), 1);
}

// Shared inner sum of the quartic/sextic double-sum identities:
//   sum_k q^{4k} (n1;q^{n1step})_k (-aq^4;q^4)_k (q^{-2n};q^2)_{2k}
//     / [ (q^4;q^4)_k (d1;q^{d1step})_k (aq^2;q^4)_k (-q^{3-2n};q^2)_{2k} ]
// Each summand is a genuine Laurent series (the (q^{-2n};q^2)_{2k} factor digs
// below 0 and the fringes do not cancel); only the enclosing outer term is
// claimed to have nonnegative valuation.
inline LaurentSeries quartic_inner(const Monomial& a, const Monomial& n1,
                                   exp_t n1step, const Monomial& d1,
                                   exp_t d1step, exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; 2 * k <= n; ++k) {
    auto numer = mul(mul(poch_finite(n1, n1step, k),
                         poch_finite(Monomial(-a.sign, a.exp + 4), 4, k)),
                     poch_finite(Monomial(1, -2 * n), 2, 2 * k))
                     .shifted(4 * k);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, Monomial(1, 4), 4, k);
    rest = div_poch_finite(rest, d1, d1step, k);
    rest = div_poch_finite(rest, Monomial(a.sign, a.exp + 2), 4, k);
    rest = div_poch_finite(rest, Monomial(-1, 3 - 2 * n), 2, 2 * k);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// Finite alternating quartic sum
//   B_n(a) = sum_{4k<=n} (-1)^k q^{8k^2-8k} (1-a^4 q^{32k}) (a^4;q^16)_k
//              / [ (1-a^4) (q^16;q^16)_k (q;q)_{n-4k} (aq;q)_{n+4k} ],
// the B-side of the alternating quartic pair.  B_n(0) = 1.
inline LaurentSeries alt_quartic_bsum(const Monomial& a, exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; 4 * k <= n; ++k) {
    auto numer = mul(poch_finite(Monomial(1, 4 * a.exp + 32 * k), 1, 1),
                     poch_finite(a.pow(4), 16, k))
                     .shifted(8 * k * k - 8 * k)
                     .scaled(k % 2 ? -1 : 1);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, a.pow(4), 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 16), 16, k);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, n - 4 * k);
    rest = div_poch_finite(rest, a.times(Monomial(1, 1)), 1, n + 4 * k);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// ---- per-identity builders ----

inline LaurentSeries andrews_merca_trunc_lhs(exp_t k, exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  for (exp_t j = 0; j < k; ++j) {
    int s = j % 2 ? -1 : 1;
    family.push_back({j * (3 * j + 1) / 2, s});
    family.push_back({j * (3 * j + 1) / 2 + 2 * j + 1, -s});
  }
  return theta_over_euler(family, W);
}

inline LaurentSeries andrews_merca_trunc_rhs(exp_t k, exp_t W) {
  auto S = LaurentSeries::one(W);
  exp_t base = k * (k - 1) / 2;
  int sign = (k - 1) % 2 ? -1 : 1;
  for (exp_t n = 1; base + (k + 1) * n < W; ++n) {
    auto numer = qbinomial(n - 1, k - 1).shifted(base + (k + 1) * n).scaled(sign);
    if (numer.is_zero()) continue;
    auto rest = div_poch_finite(LaurentSeries::one(W), Monomial(1, 1), 1, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries guo_zeng_trunc_rhs(exp_t k, exp_t W) {
  auto S = LaurentSeries::one(W);
  int sign = k % 2 ? -1 : 1;
  for (exp_t n = k + 1; (k + 1) * n < W; ++n) {
    auto numer = mul(mul(poch_finite(Monomial(-1, 1), 1, k),
                         poch_finite(Monomial(-1, 0), 1, n - k)),
                     qbinomial(n - 1, k))
                     .shifted((k + 1) * n)
                     .scaled(sign);
    auto rest = div_poch_finite(LaurentSeries::one(W), Monomial(1, 1), 1, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries andrews_merca_overp_rhs(exp_t k, exp_t W) {
  auto T = LaurentSeries::zero(W);
  for (exp_t j = 0; (k + 1) * (k + j + 1) < W; ++j) {
    auto numer =
        poch_infinite(Monomial(-1, k + j + 2), 1, W).shifted((k + 1) * (k + j + 1));
    auto rest = LaurentSeries::one(W);
    rest = rest.div_binomial(-1, j + k + 1);
    rest = div_poch_infinite(rest, Monomial(1, k + j + 2), 1);
    T = add(T, mul(numer, rest).truncated(W));
  }
  T = mul(T, poch_finite(Monomial(-1, 1), 1, k)).scaled(k % 2 ? -2 : 2);
  T = div_poch_finite(T, Monomial(1, 1), 1, k);
  return add(LaurentSeries::one(W), T.truncated(W));
}

inline LaurentSeries rogers_fine_lhs(const Monomial& a, const Monomial& b,
                                     const Monomial& c, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t j = 0; j * c.exp + poch_val_floor(a.exp, 1, j) < W; ++j) {
    Monomial lead = c.pow(j);
    auto numer = poch_finite(a, 1, j).shifted(lead.exp).scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = div_poch_finite(LaurentSeries::one(W + pad), b, 1, j);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries rogers_fine_rhs(const Monomial& a, const Monomial& b,
                                     const Monomial& c, exp_t W) {
  Monomial acqb = a.times(c).times(Monomial(1, 1)).times(b.inverse());
  auto S = LaurentSeries::zero(W);
  for (exp_t j = 0;; ++j) {
    exp_t floor = j * j - j + j * (b.exp + c.exp) +
                  poch_val_floor(a.exp, 1, j) + poch_val_floor(acqb.exp, 1, j);
    if (floor >= W) break;
    Monomial lead = b.pow(j).times(c.pow(j));
    auto numer =
        mul(mul(poch_finite(a, 1, j), poch_finite(acqb, 1, j)),
            poch_finite(Monomial(a.sign * c.sign, a.exp + c.exp + 2 * j), 1, 1))
            .shifted(j * j - j + lead.exp)
            .scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, b, 1, j);
    rest = div_poch_finite(rest, c, 1, j + 1);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries andrews_1986_lhs(const Monomial& a, const Monomial& b,
                                      exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t j = 0; j <= n; ++j) {
    Monomial lead = a.pow(j);
    auto numer = mul(mul(poch_finite(b, 1, j),
                         poch_finite(Monomial(b.sign, b.exp + 2 * j), 1, 1)),
                     poch_finite(b.times(a.inverse()), 1, j))
                     .shifted(j * j + lead.exp)
                     .scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, b, 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, j);
    rest = div_poch_finite(rest, a.times(Monomial(1, 1)), 1, j);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries andrews_1986_rhs(const Monomial& a, const Monomial& b,
                                      exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W + 1);
  for (exp_t j = 0; j <= n; ++j) {
    Monomial lead = a.pow(j);
    auto numer = poch_finite(b.times(a.inverse()), 1, j)
                     .shifted((n + 1) * j + lead.exp)
                     .scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = div_poch_finite(LaurentSeries::one(W + 1 + pad), Monomial(1, 1), 1, j);
    S = add(S, mul(numer, rest).truncated(W + 1));
  }
  auto out = mul(S, poch_finite(b.times(Monomial(1, 1)), 1, n));
  return div_poch_finite(out, a.times(Monomial(1, 1)), 1, n).truncated(W);
}

inline LaurentSeries bressoud_lhs(const Monomial& a, const Monomial& g, exp_t n,
                                  exp_t W) {
  Monomial agq = a.times(g).times(Monomial(1, 1));
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; k <= n; ++k) {
    Monomial lead = a.pow(k);
    auto numer = mul(qbinomial(n, k), poch_finite(agq, 1, n))
                     .shifted(k * k + lead.exp)
                     .scaled(lead.sign);
    auto rest = LaurentSeries::one(W);
    rest = div_poch_finite(rest, agq, 1, k);
    rest = div_poch_finite(rest, agq, 1, n - k);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries bressoud_rhs(const Monomial& a, const Monomial& g, exp_t n,
                                  exp_t W) {
  Monomial agq = a.times(g).times(Monomial(1, 1));
  Monomial a2q = a.pow(2).times(Monomial(1, 1));
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; 2 * k <= n; ++k) {
    Monomial lead = a.pow(2 * k).times(g.pow(k));
    auto numer = mul(poch_finite(Monomial(a.sign, a.exp + 2 * k), 1, 1),
                     mul(poch_finite(a, 1, k), poch_finite(g.inverse(), 1, k)))
                     .shifted(2 * k * k + lead.exp)
                     .scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, a, 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, k);
    rest = div_poch_finite(rest, agq, 1, k);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, n - 2 * k);
    rest = div_poch_finite(rest, a2q, 1, n + 2 * k);
    S = add(S, mul(numer, rest).truncated(W));
  }
  auto pref = mul(poch_finite(a2q, 1, 2 * n), poch_finite(Monomial(1, 1), 1, n));
  auto out = mul(S, pref);
  return div_poch_finite(out, a.times(Monomial(1, 1)), 1, n).truncated(W);
}

inline LaurentSeries help_1_lhs(const Monomial& a, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0;; ++n) {
    exp_t v = (13 * n * n - n) / 2 + 6 * n * a.exp;
    if (v >= W + 8 * n + 8) break;  // slack: numerator factors only raise this
    auto numer = mul(poch_finite(Monomial(a.sign, a.exp + 2 * n), 1, 1),
                     poch_finite(a, 1, n))
                     .shifted(v)
                     .scaled(n % 2 ? -1 : 1);  // a^{6n} carries no sign
    auto rest = LaurentSeries::one(W);
    rest = div_poch_finite(rest, a, 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return div_poch_infinite(S, a.pow(2).times(Monomial(1, 1)), 1);
}

inline LaurentSeries help_1_rhs(const Monomial& a, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; n * n + 2 * n * a.exp < W; ++n) {
    auto inner = LaurentSeries::zero();
    for (exp_t k = 0; k <= n; ++k) {
      Monomial lead = a.pow(k);
      inner = add(inner,
                  qbinomial(n, k).shifted(k * k + lead.exp).scaled(lead.sign));
    }
    auto numer = mul(inner, poch_finite(a.times(Monomial(1, 1)), 1, n))
                     .shifted(n * n + 2 * n * a.exp);
    auto rest = LaurentSeries::one(W);
    rest = div_poch_finite(rest, a.pow(2).times(Monomial(1, 1)), 1, 2 * n);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries berkovich_warnaar_1_lhs(const Monomial& a, const Monomial& b,
                                             exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; 4 * k <= n; ++k) {
    Monomial lead = b.pow(k);
    auto numer =
        mul(mul(poch_finite(Monomial(1, 2 * a.exp + 16 * k), 1, 1),
                mul(poch_finite(a.pow(2), 8, k),
                    poch_finite(a.pow(2).times(Monomial(1, 4)).times(b.inverse()),
                                8, k))),
            poch_finite(Monomial(1, n - 4 * k + 1), 1, 4 * k))
            .shifted(8 * k * k - 4 * k + lead.exp)
            .scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, a.pow(2), 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 8), 8, k);
    rest = div_poch_finite(rest, b.times(Monomial(1, 4)), 8, k);
    rest = div_poch_finite(rest, a.times(Monomial(1, n + 1)), 1, 4 * k);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries berkovich_warnaar_1_rhs(const Monomial& a, const Monomial& b,
                                             exp_t n, exp_t W) {
  auto inner = quartic_inner(a, b, 8, b, 4, n, W + 2 * n + 2);
  auto numer = mul(poch_finite(Monomial(-1, -1), 2, n),
                   poch_finite(a.times(Monomial(1, 1)), 1, n))
                   .shifted(n);
  auto out = mul(inner, numer);
  out = div_poch_finite(out, Monomial(-1, 1), 1, n);
  out = div_poch_finite(out, a.times(Monomial(1, 1)), 2, n);
  return out.truncated(W);
}

inline LaurentSeries berkovich_warnaar_2_rhs(const Monomial& a, exp_t n, exp_t W) {
  auto system = quartic_alternating_system(a, W);
  return compute_B(system, n, W);
}

inline LaurentSeries berkovich_warnaar_3_lhs(const Monomial& a, exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; 6 * k <= n; ++k) {
    Monomial lead = a.pow(2 * k);
    auto numer = mul(poch_finite(Monomial(1, 2 * a.exp + 24 * k), 1, 1),
                     poch_finite(a.pow(2), 12, k))
                     .shifted(18 * k * k - 6 * k + lead.exp)
                     .scaled((k % 2 ? -1 : 1) * lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, a.pow(2), 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 12), 12, k);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, n - 6 * k);
    rest = div_poch_finite(rest, a.times(Monomial(1, 1)), 1, n + 6 * k);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries berkovich_warnaar_3_rhs(const Monomial& a, exp_t n, exp_t W) {
  auto inner = quartic_inner(a, a.pow(2), 12, a.pow(2), 8, n, W + 2 * n + 2);
  auto numer = poch_finite(Monomial(-1, -1), 2, n).shifted(n);
  auto out = mul(inner, numer);
  out = div_poch_finite(out, Monomial(1, 2), 2, n);
  out = div_poch_finite(out, a.times(Monomial(1, 1)), 2, n);
  return out.truncated(W);
}

inline LaurentSeries help_2_0_lhs(const Monomial& a, const Monomial& b, exp_t W) {
  auto S = LaurentSeries::zero(W);
  // The n-th term has true valuation n^2 + n*val(a): the inner sum's negative
  // fringe (depth up to n-1) together with the (-1/q;q^2)_n pole exactly eats
  // the q^{n^2+n} prefactor's extra n.
  for (exp_t n = 0; n * n + n * a.exp < W; ++n) {
    auto inner = quartic_inner(a, b, 8, b, 4, n, W + 2 * n + 2);
    Monomial lead = a.pow(n);
    auto numer = mul(inner, poch_finite(Monomial(-1, -1), 2, n))
                     .shifted(n * n + n + lead.exp)
                     .scaled(lead.sign);
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, Monomial(1, 2), 2, n);
    rest = div_poch_finite(rest, a.times(Monomial(1, 1)), 2, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries help_2_0_rhs(const Monomial& a, const Monomial& b, exp_t W) {
  auto S = LaurentSeries::zero(W);
  Monomial ratio = a.pow(2).times(Monomial(1, 4)).times(b.inverse());
  for (exp_t n = 0;
       24 * n * n - 4 * n + 4 * n * a.exp + n * b.exp < W; ++n) {
    Monomial lead = a.pow(4 * n).times(b.pow(n));
    auto numer = mul(poch_finite(Monomial(1, 2 * a.exp + 16 * n), 1, 1),
                     mul(poch_finite(a.pow(2), 8, n), poch_finite(ratio, 8, n)))
                     .shifted(24 * n * n - 4 * n + lead.exp)
                     .scaled(lead.sign);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, a.pow(2), 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 8), 8, n);
    rest = div_poch_finite(rest, b.times(Monomial(1, 4)), 8, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return div_poch_infinite(S, a.times(Monomial(1, 1)), 1);
}

inline LaurentSeries thm1_lhs(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  for (exp_t j = 0; (13 * j * j + 11 * j) / 2 < W; ++j) {
    int s = j % 2 ? -1 : 1;
    family.push_back({(13 * j * j + 11 * j) / 2, s});
    family.push_back({(13 * j * j + 15 * j) / 2 + 1, -s});
  }
  return theta_over_euler(family, W);
}

inline LaurentSeries thm1_rhs(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; n * n + 2 * n < W; ++n) {
    auto inner = LaurentSeries::zero();
    for (exp_t k = 0; k <= n; ++k)
      inner = add(inner, qbinomial(n, k).shifted(k * k + k));
    auto numer = mul(inner, poch_finite(Monomial(1, n + 1), 1, 1))
                     .shifted(n * n + 2 * n);
    auto rest = LaurentSeries::one(W);
    rest = div_poch_finite(rest, Monomial(1, 1), 1, 1);
    rest = div_poch_finite(rest, Monomial(1, 2), 1, 2 * n + 1);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries thm2_lhs(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  for (exp_t j = 0; 28 * j * j + 20 * j < W; ++j) {
    int s = j % 2 ? -1 : 1;
    family.push_back({28 * j * j + 20 * j, s});
    family.push_back({28 * j * j + 36 * j + 8, -s});
  }
  return theta_over_euler(family, W);
}

inline LaurentSeries thm2_rhs(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; 5 * n < W + 8; ++n) {
    auto outer_num = poch_finite(Monomial(-1, -1), 2, n);
    auto inner = LaurentSeries::zero(W + 2 * n + 4);
    for (exp_t k = 0; 2 * k <= n; ++k) {
      auto numer = mul(qbinomial(n, 2 * k, 2), poch_finite(Monomial(-1, 4), 4, k + 1))
                       .shifted((n - 2 * k) * (n - 2 * k) + 5 * n + 2 * k);
      exp_t pad = std::max<exp_t>(0, -numer.min_exp());
      auto rest = LaurentSeries::one(W + 2 * n + 4 + pad);
      rest = rest.div_binomial(-1, 4 * k + 2);
      rest = div_poch_finite(rest, Monomial(-1, 3 - 2 * n), 2, 2 * k);
      inner = add(inner, mul(numer, rest).truncated(W + 2 * n + 4));
    }
    auto numer = mul(outer_num, inner);
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, Monomial(1, 2), 2, n);
    rest = div_poch_finite(rest, Monomial(1, 1), 2, n + 2);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

inline LaurentSeries thm3_lhs(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  for (exp_t j = 0; 24 * j * j + 8 * j < W; ++j) {
    int s = j % 2 ? -1 : 1;
    family.push_back({24 * j * j + 8 * j, s});
    family.push_back({24 * j * j + 40 * j + 16, -s});
  }
  return theta_over_euler(family, W);
}

inline LaurentSeries thm3_rhs(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; n * n + 4 * n < W; ++n)
    S = add(S, alt_quartic_bsum(Monomial(1, 4), n, W)
               .shifted(n * n + 4 * n)
               .truncated(W));
  S = mul(S, poch_finite(Monomial(1, 16), 1, 1));
  return div_poch_finite(S, Monomial(1, 1), 1, 4);
}

inline LaurentSeries thm4_lhs(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  for (exp_t j = 0; 54 * j * j + 42 * j < W; ++j) {
    int s = j % 2 ? -1 : 1;
    family.push_back({54 * j * j + 42 * j, s});
    family.push_back({54 * j * j + 66 * j + 12, -s});
  }
  return theta_over_euler(family, W);
}

inline LaurentSeries thm4_rhs(exp_t W) {
  const Monomial a(1, 6);  // the sextic chain's specialization point
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; n * n + 6 * n < W; ++n) {
    auto inner = quartic_inner(a, a.pow(2), 12, a.pow(2), 8, n, W + 2 * n + 2);
    auto numer = mul(inner, poch_finite(Monomial(-1, -1), 2, n))
                     .shifted(n * n + 7 * n);
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, Monomial(1, 2), 2, n);
    rest = div_poch_finite(rest, Monomial(1, 7), 2, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  S = mul(S, poch_finite(Monomial(1, 12), 1, 1));
  return div_poch_finite(S, Monomial(1, 1), 1, 6);
}

inline LaurentSeries concluding_0_lhs(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  family.push_back({0, 1});  // n = 0 enters once
  for (exp_t n = 1; (13 * n * n - n) / 2 < W; ++n) {
    int s = n % 2 ? -1 : 1;
    family.push_back({(13 * n * n - n) / 2, s});
    family.push_back({(13 * n * n + n) / 2, s});
  }
  return theta_over_euler(family, W);
}

inline LaurentSeries concluding_1_lhs(exp_t W) {
  return div_poch_infinite(theta_sum_odd_M(13, W), Monomial(1, 1), 1);
}

inline LaurentSeries concluding_2_rhs(exp_t W) {
  return div_poch_infinite(triple_product_rhs(13, W), Monomial(1, 1), 1);
}

inline LaurentSeries general_odd_m_lhs(exp_t M, exp_t W) {
  return div_poch_infinite(theta_sum_odd_M(M, W), Monomial(1, 1), 1);
}

inline LaurentSeries general_odd_m_rhs(exp_t M, exp_t W) {
  return div_poch_infinite(triple_product_rhs(M, W), Monomial(1, 1), 1);
}

// ---- registry assembly ----

inline std::vector<IdentityDescriptor> make_registry() {
  std::vector<IdentityDescriptor> reg;
  const ParamSpec kParam{"k", ParamSpec::Kind::integer, "≥ 1 (truncation length)"};

  {
    IdentityDescriptor d;
    d.id = "andrews-merca-trunc";
    d.summary = "truncated pentagonal number series equals a single-sum tail";
    d.reference = "Andrews-Merca truncated pentagonal number theorem";
    d.schema = {kParam};
    for (exp_t k = 1; k <= 6; ++k) d.grid.push_back(Params{}.set("k", k));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("k") >= 1, "andrews-merca-trunc: k must be >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return andrews_merca_trunc_lhs(p.integer("k"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return andrews_merca_trunc_rhs(p.integer("k"), W);
    };
    d.notes =
        "lhs is (1/(q;q)_inf) sum_{j<k} (-1)^j q^{j(3j+1)/2} (1-q^{2j+1}); rhs "
        "is 1 + (-1)^{k-1} sum_{n>=1} q^{C(k,2)+(k+1)n} [n-1,k-1]_q / (q;q)_n.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "guo-zeng-trunc";
    d.summary = "truncated Gauss square theorem over the overpartition weight";
    d.reference = "Guo-Zeng truncated theta series theorem";
    d.schema = {kParam};
    for (exp_t k = 1; k <= 6; ++k) d.grid.push_back(Params{}.set("k", k));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("k") >= 1, "guo-zeng-trunc: k must be >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return overp_square_lhs(p.integer("k"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return guo_zeng_trunc_rhs(p.integer("k"), W);
    };
    d.notes =
        "rhs tail is 1 + (-1)^k sum_{n>k} (-q;q)_k (-1;q)_{n-k} q^{(k+1)n} "
        "[n-1,k]_q / (q;q)_n; the variant with binomial [n-1,k-1]_q fails "
        "first at k=1, exponent 7 (variant gives -14, true coefficient -16).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "andrews-merca-overp";
    d.summary = "truncated square theta for overpartitions, product-tail form";
    d.reference = "Andrews-Merca truncated theta theorem, overpartition form";
    d.schema = {kParam};
    for (exp_t k = 1; k <= 4; ++k) d.grid.push_back(Params{}.set("k", k));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("k") >= 1, "andrews-merca-overp: k must be >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return overp_square_lhs(p.integer("k"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return andrews_merca_overp_rhs(p.integer("k"), W);
    };
    d.notes =
        "rhs is 1 + 2(-1)^k ((-q;q)_k/(q;q)_k) sum_{j>=0} q^{(k+1)(k+j+1)} "
        "(-q^{k+j+2};q)_inf / ((1-q^{j+k+1}) (q^{j+k+2};q)_inf).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "rogers-fine";
    d.summary = "Rogers-Fine first transformation of sum (a)_j c^j / (b)_j";
    d.reference = "Rogers-Fine identity";
    d.schema = {{"a", ParamSpec::Kind::monomial, "numerator parameter +-q^e"},
                {"b", ParamSpec::Kind::monomial, "denominator parameter q^e, e >= 1"},
                {"c", ParamSpec::Kind::monomial, "argument q^e, e >= 1"}};
    for (Monomial a : {Monomial(1, 1), Monomial(-1, 1), Monomial(1, 2), Monomial(-1, 2)})
      for (Monomial b : {Monomial(1, 1), Monomial(1, 2)})
        for (Monomial c : {Monomial(1, 1), Monomial(1, 2), Monomial(1, 3)})
          d.grid.push_back(Params{}.set("a", a).set("b", b).set("c", c));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.monomial("b").exp >= 1,
              "rogers-fine: b must have exponent >= 1 (unit-led denominators)");
      require(p.monomial("c").exp >= 1,
              "rogers-fine: c must have exponent >= 1 (formal convergence)");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return rogers_fine_lhs(p.monomial("a"), p.monomial("b"), p.monomial("c"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return rogers_fine_rhs(p.monomial("a"), p.monomial("b"), p.monomial("c"), W);
    };
    d.notes =
        "rhs is sum_j (a)_j (acq/b)_j (bc)^j q^{j^2-j} (1-acq^{2j}) / "
        "((b)_j (c)_{j+1}).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "andrews-1986";
    d.summary = "finite Rogers-Ramanujan-type summation with two free parameters";
    d.reference = "Andrews (1986), limiting case of Watson's q-Whipple";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter +-q^e, e >= 0"},
                {"b", ParamSpec::Kind::monomial, "parameter +-q^e, e >= 1"},
                {"n", ParamSpec::Kind::integer, "finite length, n >= 0"}};
    for (Monomial a : {Monomial(1, 1), Monomial(1, 2), Monomial(-1, 1)})
      for (Monomial b : {Monomial(1, 3), Monomial(-1, 2)})
        for (exp_t n : {0, 1, 2, 3, 7, 10})
          d.grid.push_back(Params{}.set("a", a).set("b", b).set("n", n));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("n") >= 0, "andrews-1986: n must be >= 0");
      require(p.monomial("a").exp >= 0,
              "andrews-1986: a must have exponent >= 0");
      require(p.monomial("b").exp >= 1,
              "andrews-1986: b must have exponent >= 1 (the 1/(1-b) factor)");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return andrews_1986_lhs(p.monomial("a"), p.monomial("b"), p.integer("n"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return andrews_1986_rhs(p.monomial("a"), p.monomial("b"), p.integer("n"), W);
    };
    d.notes =
        "sum_{j<=n} (b)_j (1-bq^{2j}) (b/a)_j a^j q^{j^2} / ((1-b)(q)_j(aq)_j) "
        "= ((bq)_n/(aq)_n) sum_{j<=n} (b/a)_j a^j q^{(n+1)j} / (q)_j.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "bressoud-3.4";
    d.summary = "Bressoud's finite quadratic summation (two-parameter form)";
    d.reference = "Bressoud, eq. (3.4)";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter +-q^e, e >= 1"},
                {"g", ParamSpec::Kind::monomial, "parameter +-q^e with val(ag) >= 0"},
                {"n", ParamSpec::Kind::integer, "finite length, n >= 0"}};
    for (Monomial a : {Monomial(1, 1), Monomial(1, 2), Monomial(1, 4)})
      for (Monomial g : {Monomial(1, 1), Monomial(1, 2)})
        for (exp_t n : {0, 1, 2, 3, 5, 8, 12})
          d.grid.push_back(Params{}.set("a", a).set("g", g).set("n", n));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("n") >= 0, "bressoud-3.4: n must be >= 0");
      require(p.monomial("a").exp >= 1,
              "bressoud-3.4: a must have exponent >= 1 (the 1/(1-a) factor)");
      require(p.monomial("a").exp + p.monomial("g").exp >= 0,
              "bressoud-3.4: ag must have exponent >= 0");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return bressoud_lhs(p.monomial("a"), p.monomial("g"), p.integer("n"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return bressoud_rhs(p.monomial("a"), p.monomial("g"), p.integer("n"), W);
    };
    d.notes =
        "sum_k a^k q^{k^2} [n,k]_q (agq)_n / ((agq)_k (agq)_{n-k}) = "
        "(a^2q;q)_{2n} ((q)_n/(aq)_n) sum_{2k<=n} a^{2k} g^k q^{2k^2} "
        "(1-aq^{2k}) (a)_k (1/g)_k / ((1-a)(q)_k(agq)_k(q)_{n-2k}(a^2q)_{n+2k}).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "help-1";
    d.summary = "quadratic double-sum evaluation (degenerate parameter limit)";
    d.reference = "limiting case of Bressoud's quadratic summation";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter +-q^e, e >= 1"}};
    for (Monomial a : {Monomial(1, 1), Monomial(1, 2), Monomial(-1, 1)})
      d.grid.push_back(Params{}.set("a", a));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.monomial("a").exp >= 1,
              "help-1: a must have exponent >= 1 (the 1/(1-a) factor)");
    };
    d.lhs = [](const Params& p, exp_t W) { return help_1_lhs(p.monomial("a"), W); };
    d.rhs = [](const Params& p, exp_t W) { return help_1_rhs(p.monomial("a"), W); };
    d.notes =
        "(1/(a^2q;q)_inf) sum_n (-1)^n a^{6n} q^{(13n^2-n)/2} (1-aq^{2n}) "
        "(a)_n / ((1-a)(q)_n) = sum_n a^{2n} q^{n^2} (aq)_n / "
        "((q)_n (a^2q)_{2n}) sum_k a^k q^{k^2} [n,k]_q.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "berkovich-warnaar-1";
    d.summary = "quartic single-sum equals double-sum transformation";
    d.reference = "Berkovich-Warnaar quartic transformation";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter q^e, e >= 1"},
                {"b", ParamSpec::Kind::monomial, "parameter q^e, e >= 1"},
                {"n", ParamSpec::Kind::integer, "finite length, n >= 0"}};
    for (Monomial a : {Monomial(1, 4), Monomial(1, 6)})
      for (Monomial b : {Monomial(1, 2), Monomial(1, 4)})
        for (exp_t n : {0, 1, 2, 3, 5, 8, 12})
          d.grid.push_back(Params{}.set("a", a).set("b", b).set("n", n));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("n") >= 0, "berkovich-warnaar-1: n must be >= 0");
      require(p.monomial("a").exp >= 1,
              "berkovich-warnaar-1: a must have exponent >= 1");
      require(p.monomial("b").exp >= 1,
              "berkovich-warnaar-1: b must have exponent >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return berkovich_warnaar_1_lhs(p.monomial("a"), p.monomial("b"),
                                     p.integer("n"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return berkovich_warnaar_1_rhs(p.monomial("a"), p.monomial("b"),
                                     p.integer("n"), W);
    };
    d.notes =
        "Paired square-root factors are carried as (b;q^8)_k. rhs outer term "
        "is q^n (-1/q;q^2)_n (aq)_n / ((-q)_n (aq;q^2)_n) times the shared "
        "quartic inner sum; each inner summand is a Laurent series whose "
        "negative fringe only cancels against the outer prefactor.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "berkovich-warnaar-2";
    d.summary = "alternating quartic B-sequence against its transform route";
    d.reference = "Berkovich-Warnaar alternating quartic pair";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter q^e, e >= 1"},
                {"n", ParamSpec::Kind::integer, "finite length, n >= 0"}};
    for (Monomial a : {Monomial(1, 4), Monomial(1, 6)})
      for (exp_t n : {0, 1, 2, 3, 5, 8, 12})
        d.grid.push_back(Params{}.set("a", a).set("n", n));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("n") >= 0, "berkovich-warnaar-2: n must be >= 0");
      require(p.monomial("a").exp >= 1,
              "berkovich-warnaar-2: a must have exponent >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return alt_quartic_bsum(p.monomial("a"), p.integer("n"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return berkovich_warnaar_2_rhs(p.monomial("a"), p.integer("n"), W);
    };
    d.notes =
        "lhs is the explicit finite alternating sum; rhs rebuilds B_n through "
        "the transform engine's pair summation, so the two sides take disjoint "
        "code paths. No single-sum companion of the usual quartic shape "
        "exists for this B_n: matching one forces a k-independent pole "
        "1/(1-a^2q^8) in the would-be factor sequence, which is not "
        "q-hypergeometric; the nearest such variant fails first at n=2 "
        "(variant gives constant term 0, true 1).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "berkovich-warnaar-3";
    d.summary = "sextic single-sum equals double-sum transformation";
    d.reference = "Berkovich-Warnaar sextic transformation";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter q^e, e >= 1"},
                {"n", ParamSpec::Kind::integer, "finite length, n >= 0"}};
    for (Monomial a : {Monomial(1, 4), Monomial(1, 6)})
      for (exp_t n : {0, 1, 2, 3, 5, 8, 12})
        d.grid.push_back(Params{}.set("a", a).set("n", n));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.integer("n") >= 0, "berkovich-warnaar-3: n must be >= 0");
      require(p.monomial("a").exp >= 1,
              "berkovich-warnaar-3: a must have exponent >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return berkovich_warnaar_3_lhs(p.monomial("a"), p.integer("n"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return berkovich_warnaar_3_rhs(p.monomial("a"), p.integer("n"), W);
    };
    d.notes =
        "Cube-root-of-unity factor triples are carried as (a^2;q^12)_k and "
        "paired factors as (a^2;q^8)_k. lhs is the plain B-form with "
        "(q)_{n-6k} (aq)_{n+6k} denominators (no outer numerator fold).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "help-2-0";
    d.summary = "quartic double-sum generating function equals single sum";
    d.reference = "quartic pair summed against the conjugate weight";
    d.schema = {{"a", ParamSpec::Kind::monomial, "parameter q^e, e >= 1"},
                {"b", ParamSpec::Kind::monomial, "parameter q^e, e >= 1"}};
    for (Monomial a : {Monomial(1, 4), Monomial(1, 6)})
      for (Monomial b : {Monomial(1, 2), Monomial(1, 4)})
        d.grid.push_back(Params{}.set("a", a).set("b", b));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      require(p.monomial("a").exp >= 1, "help-2-0: a must have exponent >= 1");
      require(p.monomial("b").exp >= 1, "help-2-0: b must have exponent >= 1");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return help_2_0_lhs(p.monomial("a"), p.monomial("b"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return help_2_0_rhs(p.monomial("a"), p.monomial("b"), W);
    };
    d.notes =
        "Outer terms of the lhs have true valuation n^2 + n*val(a) (the inner "
        "sum's negative fringe eats the q^{n^2+n} prefactor's extra n), and "
        "the summation bound uses exactly that floor; a bound assuming "
        "valuation n^2+n+n*val(a)-1 silently drops terms near the window "
        "edge.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "thm1";
    d.summary = "mod-13 theta evaluation of the quadratic double series";
    d.reference = "theta family j(13j+11)/2, j(13j+15)/2+1";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return thm1_lhs(W); };
    d.rhs = [](const Params&, exp_t W) { return thm1_rhs(W); };
    d.notes =
        "rhs is sum_n q^{n^2+2n} (1-q^{n+1}) / ((1-q)(q^2;q)_{2n+1}) "
        "sum_k q^{k^2+k} [n,k]_q; the variant without the (1-q^{n+1})/(1-q) "
        "factor fails first at q^4 (variant gives 1, true coefficient 2).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "thm2";
    d.summary = "theta evaluation of the quadratic-shifted quartic double sum";
    d.reference = "theta families 28j^2+20j, 28j^2+36j+8";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return thm2_lhs(W); };
    d.rhs = [](const Params&, exp_t W) { return thm2_rhs(W); };
    d.notes =
        "rhs outer denominators are (q^2;q^2)_n (q;q^2)_{n+2} and the inner "
        "binomial is [n,2k]_{q^2}. The variant with exponent family "
        "40j^2-4j+4 / 40j^2+12j+12, outer (q;q)_{2n+3}, and binomial "
        "[2n,2k]_{q^2} fails already at the constant term (variant gives 1, "
        "true 0).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "thm3";
    d.summary = "theta evaluation of the alternating quartic double series";
    d.reference = "theta families 24j^2+8j, 24j^2+40j+16";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return thm3_lhs(W); };
    d.rhs = [](const Params&, exp_t W) { return thm3_rhs(W); };
    d.notes =
        "rhs composes the alternating quartic B-sum at monomial q^4: "
        "((1-q^16)/(q;q)_4) sum_n q^{n^2+4n} B_n. A closed double-sum variant "
        "with per-k factor (1+q^{4k+4}) fails first at q^8 (variant gives 21, "
        "true coefficient 22).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "thm4";
    d.summary = "theta evaluation of the sextic double series";
    d.reference = "theta families 54j^2+42j, 54j^2+66j+12";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return thm4_lhs(W); };
    d.rhs = [](const Params&, exp_t W) { return thm4_rhs(W); };
    d.notes =
        "rhs is ((1-q^12)/(q;q)_6) sum_n q^{n^2+7n} (-1/q;q^2)_n / "
        "((q^2;q^2)_n (q^7;q^2)_n) times the sextic inner sum at q^6. The "
        "variant with a k-independent (1+q^4+q^8) inner factor fails first "
        "at q^4 (variant gives 6, true coefficient 5).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "concluding-0";
    d.summary = "unilateral mod-13 theta form of the double sum";
    d.reference = "unilateral form of the bilateral mod-13 identity";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return concluding_0_lhs(W); };
    d.rhs = [](const Params&, exp_t W) { return double_sum_13(W); };
    d.notes =
        "The n=0 term of sum_n (-1)^n (1+q^n) q^{(13n^2-n)/2} is folded once "
        "(the bilateral form it abbreviates has constant term 1); the "
        "weight-2 literal reading fails at the constant term (variant gives "
        "2, true 1).";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "concluding-1";
    d.summary = "bilateral mod-13 theta identity for the double sum";
    d.reference = "bilateral theta sum, modulus 13";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return concluding_1_lhs(W); };
    d.rhs = [](const Params&, exp_t W) { return double_sum_13(W); };
    d.notes =
        "lhs is (1/(q;q)_inf) sum_{n in Z} (-1)^n q^{(13n^2+n)/2} via the "
        "bilateral theta helper.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "concluding-2";
    d.summary = "double sum equals (q^6,q^7,q^13;q^13)_inf / (q;q)_inf";
    d.reference = "Jacobi triple product evaluation, modulus 13";
    d.default_order = 200;
    d.grid.push_back(Params{});
    d.lhs = [](const Params&, exp_t W) { return double_sum_13(W); };
    d.rhs = [](const Params&, exp_t W) { return concluding_2_rhs(W); };
    d.notes = "rhs is the triple-product form divided by the Euler product.";
    reg.push_back(std::move(d));
  }

  {
    IdentityDescriptor d;
    d.id = "general-odd-M";
    d.summary = "bilateral theta over Euler equals triple product, odd modulus";
    d.reference = "Jacobi triple product, odd modulus specialization";
    d.schema = {{"M", ParamSpec::Kind::integer, "odd modulus, M >= 3"}};
    for (exp_t Mv : {3, 5, 7, 9, 11, 13})
      d.grid.push_back(Params{}.set("M", Mv));
    d.default_order = 100;
    d.validate = [](const Params& p) {
      exp_t Mv = p.integer("M");
      require(Mv >= 3 && Mv % 2 == 1,
              "general-odd-M: M must be an odd integer >= 3");
    };
    d.lhs = [](const Params& p, exp_t W) {
      return general_odd_m_lhs(p.integer("M"), W);
    };
    d.rhs = [](const Params& p, exp_t W) {
      return general_odd_m_rhs(p.integer("M"), W);
    };
    d.notes =
        "(1/(q;q)_inf) sum_{n in Z} (-1)^n q^{(Mn^2+n)/2} = "
        "(q^{(M-1)/2}, q^{(M+1)/2}, q^M; q^M)_inf / (q;q)_inf. M=1 "
        "degenerates (both sides 1) and is outside the schema.";
    reg.push_back(std::move(d));
  }

  return reg;
}

inline void check_params(const IdentityDescriptor& d, const Params& p) {
  for (const auto& spec : d.schema) {
    bool found = spec.kind == ParamSpec::Kind::integer
                     ? p.has_integer(spec.name)
                     : p.has_monomial(spec.name);
    if (!found)
      throw domain_error(
          "identity '" + d.id + "' requires " +
          (spec.kind == ParamSpec::Kind::integer ? std::string("integer")
                                                 : std::string("monomial")) +
          " parameter '" + spec.name + "'");
  }
  for (const auto& name : p.names()) {
    bool known = false;
    for (const auto& spec : d.schema) known = known || spec.name == name;
    if (!known)
      throw domain_error("identity '" + d.id + "' does not take parameter '" +
                         name + "'");
  }
  if (d.validate) d.validate(p);
}

}  // namespace detail

inline const std::vector<IdentityDescriptor>& list_identities() {
  static const std::vector<IdentityDescriptor> registry = detail::make_registry();
  return registry;
}

inline const IdentityDescriptor& find_identity(const std::string& id) {
  for (const auto& d : list_identities())
    if (d.id == id) return d;
  throw domain_error("unknown identity '" + id + "'");
}

inline LaurentSeries build_side(const std::string& id, Side side,
                                const Params& params, exp_t prec) {
  const auto& d = find_identity(id);
  detail::check_params(d, params);
  return side == Side::lhs ? d.lhs(params, prec) : d.rhs(params, prec);
}

inline VerificationReport verify(const std::string& id, const Params& params,
                                 exp_t lo, exp_t hi) {
  const auto& d = find_identity(id);
  detail::check_params(d, params);
  auto report = equal_up_to(d.lhs(params, hi), d.rhs(params, hi), lo, hi);
  report.identity = id;
  report.params = params.rendered();
  return report;
}

}  // namespace qseries
