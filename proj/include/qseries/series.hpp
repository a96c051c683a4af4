#pragma once
// Truncated formal Laurent series over arbitrary-precision integers.
//
// A series stores exact coefficients densely on [min_exp, min_exp + len)
// together with a knowledge bound `prec`:
//
//   * exponents below min_exp are exactly 0,
//   * exponents in [min_exp + len, prec) are exactly 0,
//   * exponents >= prec are unknown (truncated away).
//
// Exact objects (monomials, polynomials) carry an unbounded-precision
// sentinel so exactness survives arithmetic. Every operation propagates
// `prec` soundly: a coefficient reported inside the knowledge window is
// always the true coefficient of the modelled infinite-precision object.
// All verification in this library reduces to exact integer comparison of
// such windows; there are no floating-point tolerances anywhere.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qseries/report.hpp"

namespace qseries {

using Coeff = mpz_class;
using exp_t = std::int64_t;

// Knowledge bound carried by exact objects. Saturating under shifts.
inline constexpr exp_t kPrecUnbounded = exp_t(1) << 62;

inline exp_t sat_add(exp_t a, exp_t b) {
  if (a >= kPrecUnbounded || b >= kPrecUnbounded) return kPrecUnbounded;
  exp_t s = a + b;
  return s >= kPrecUnbounded ? kPrecUnbounded : s;
}

// A coefficient was requested at or beyond the knowledge bound, or an
// operation would need more precision than its inputs carry.
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& w) : std::runtime_error(w) {}
};
// Inversion/division requires a leading coefficient of +1 or -1.
struct non_unit_error : std::runtime_error {
  explicit non_unit_error(const std::string& w) : std::runtime_error(w) {}
};
// Inversion of a series with no nonzero coefficient in its window.
struct division_by_zero_error : std::runtime_error {
  explicit division_by_zero_error(const std::string& w) : std::runtime_error(w) {}
};
// An argument lies outside an operation's contract (bad window, bad index).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& w) : std::runtime_error(w) {}
};
// A summation guard tripped: an allegedly convergent sum kept producing
// terms below the target precision past its index cap.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& w) : std::runtime_error(w) {}
};

class LaurentSeries {
 public:
  // Default-constructed series is the exact zero.
  LaurentSeries() = default;

  static LaurentSeries zero(exp_t prec = kPrecUnbounded) {
    LaurentSeries s;
    s.prec_ = prec;
    return s;
  }

  static LaurentSeries monomial(Coeff c, exp_t e, exp_t prec = kPrecUnbounded) {
    if (prec <= e)
      throw precision_error("monomial: exponent " + std::to_string(e) +
                            " is not below precision " + std::to_string(prec));
    LaurentSeries s;
    s.prec_ = prec;
    if (c != 0) {
      s.min_exp_ = e;
      s.c_.push_back(std::move(c));
    }
    return s;
  }

  static LaurentSeries one(exp_t prec = kPrecUnbounded) {
    return monomial(1, 0, prec);
  }

  // Dense coefficients for exponents min_exp, min_exp+1, ... Entries at or
  // beyond `prec` are discarded.
  static LaurentSeries from_coeffs(exp_t min_exp, std::vector<Coeff> cs,
                                   exp_t prec = kPrecUnbounded) {
    LaurentSeries s;
    s.prec_ = prec;
    s.min_exp_ = min_exp;
    s.c_ = std::move(cs);
    if (prec < kPrecUnbounded && min_exp + exp_t(s.c_.size()) > prec) {
      exp_t keep = std::max<exp_t>(0, prec - min_exp);
      s.c_.resize(static_cast<std::size_t>(keep));
    }
    s.normalize();
    return s;
  }

  exp_t min_exp() const { return min_exp_; }
  exp_t prec() const { return prec_; }
  bool exact() const { return prec_ >= kPrecUnbounded; }

  // True when every known coefficient is zero. The series may still have
  // unknown nonzero coefficients at exponents >= prec().
  bool is_zero() const { return c_.empty(); }

  // Exponent of the first nonzero known coefficient, if any.
  std::optional<exp_t> valuation() const {
    if (c_.empty()) return std::nullopt;
    return min_exp_;  // normalized: front coefficient is nonzero
  }

  // Largest exponent with a stored coefficient (requires a nonzero term).
  exp_t degree_known() const {
    if (c_.empty()) throw domain_error("degree_known: series has no nonzero term");
    return min_exp_ + exp_t(c_.size()) - 1;
  }

  // Strict accessor: e must lie in [min_exp, prec).
  const Coeff& coefficient_at(exp_t e) const {
    if (e >= prec_)
      throw precision_error("coefficient_at: exponent " + std::to_string(e) +
                            " is at or beyond precision " + prec_string());
    if (e < min_exp_)
      throw domain_error("coefficient_at: exponent " + std::to_string(e) +
                         " is below min_exp " + std::to_string(min_exp_));
    std::size_t i = static_cast<std::size_t>(e - min_exp_);
    if (i < c_.size()) return c_[i];
    static const Coeff kZero{};
    return kZero;  // in [min_exp + len, prec): known zero
  }

  // Permissive accessor: exponents below min_exp read as 0; exponents at or
  // beyond prec still error (they are genuinely unknown).
  const Coeff& coeff_or_zero(exp_t e) const {
    static const Coeff kZero{};
    if (e >= prec_)
      throw precision_error("coeff_or_zero: exponent " + std::to_string(e) +
                            " is at or beyond precision " + prec_string());
    if (e < min_exp_) return kZero;
    std::size_t i = static_cast<std::size_t>(e - min_exp_);
    return i < c_.size() ? c_[i] : kZero;
  }

  LaurentSeries truncated(exp_t new_prec) const {
    LaurentSeries s = *this;
    if (new_prec < s.prec_) {
      s.prec_ = new_prec;
      if (!s.c_.empty()) {
        exp_t keep = std::max<exp_t>(0, new_prec - s.min_exp_);
        if (keep < exp_t(s.c_.size())) s.c_.resize(static_cast<std::size_t>(keep));
      }
      s.normalize();
    }
    return s;
  }

  // Multiplication by q^e.
  LaurentSeries shifted(exp_t e) const {
    LaurentSeries s = *this;
    s.min_exp_ += e;
    s.prec_ = sat_add(s.prec_, e);
    return s;
  }

  LaurentSeries scaled(const Coeff& k) const {
    if (k == 0) return zero(prec_);
    LaurentSeries s = *this;
    for (Coeff& c : s.c_) c *= k;
    return s;
  }

  LaurentSeries negated() const { return scaled(-1); }

  // Multiplication by the binomial (1 + c q^e). O(len), no convolution.
  LaurentSeries mul_binomial(const Coeff& c, exp_t e) const {
    if (c == 0) return *this;
    if (e == 0) return scaled(1 + c);
    LaurentSeries out;
    out.prec_ = sat_add(prec_, std::min<exp_t>(e, 0));
    if (c_.empty()) return out;  // zero stays zero; knowledge window shrinks for e<0
    exp_t lo = min_exp_ + std::min<exp_t>(e, 0);
    exp_t hi = min_exp_ + exp_t(c_.size()) + std::max<exp_t>(e, 0);  // exclusive
    if (out.prec_ < kPrecUnbounded) hi = std::min(hi, out.prec_);
    if (hi <= lo) return out;
    out.min_exp_ = lo;
    out.c_.assign(static_cast<std::size_t>(hi - lo), Coeff(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      exp_t x = min_exp_ + exp_t(i);
      if (x < hi) out.c_[static_cast<std::size_t>(x - lo)] += c_[i];
      exp_t y = x + e;
      if (y < hi) out.c_[static_cast<std::size_t>(y - lo)] += c * c_[i];
    }
    out.normalize();
    return out;
  }

  // Division by the binomial (1 + c q^e). Exact back-substitution, O(len).
  // For e < 0 the binomial is rewritten around its lowest term, which must
  // then be a unit: (1 + c q^{-m}) = c q^{-m} (1 + c q^m) when c = +-1.
  LaurentSeries div_binomial(const Coeff& c, exp_t e) const {
    if (c == 0) return *this;
    if (e == 0) {
      Coeff k = 1 + c;
      if (k == 1 || k == -1) return scaled(k);
      throw non_unit_error("div_binomial: constant divisor 1 + (" + c.get_str() +
                           ") is not a unit");
    }
    if (e < 0) {
      if (c != 1 && c != -1)
        throw non_unit_error("div_binomial: leading coefficient " + c.get_str() +
                             " of divisor is not a unit");
      if (c_.empty()) return zero(sat_add(prec_, -e));
      return shifted(-e).scaled(c).div_binomial(c, -e);
    }
    if (c_.empty()) return *this;  // zero divided by a unit-led binomial is zero
    if (prec_ >= kPrecUnbounded)
      throw precision_error(
          "div_binomial: dividing an exact series yields an infinite series; "
          "truncate first");
    LaurentSeries out;
    out.prec_ = prec_;
    out.min_exp_ = min_exp_;
    std::size_t n = static_cast<std::size_t>(prec_ - min_exp_);
    out.c_.assign(n, Coeff(0));
    // (1 + c q^e) * out = this  =>  out[x] = this[x] - c * out[x - e]
    for (std::size_t i = 0; i < n; ++i) {
      if (i < c_.size()) out.c_[i] = c_[i];
      if (exp_t(i) >= e) out.c_[i] -= c * out.c_[i - static_cast<std::size_t>(e)];
    }
    out.normalize();
    return out;
  }

  std::vector<std::pair<exp_t, Coeff>> terms(exp_t lo, exp_t hi) const {
    if (hi > prec_)
      throw precision_error("terms: window end " + std::to_string(hi) +
                            " exceeds precision " + prec_string());
    std::vector<std::pair<exp_t, Coeff>> out;
    exp_t from = std::max(lo, min_exp_);
    exp_t to = std::min(hi, min_exp_ + exp_t(c_.size()));
    for (exp_t e = from; e < to; ++e) {
      const Coeff& c = c_[static_cast<std::size_t>(e - min_exp_)];
      if (c != 0) out.emplace_back(e, c);
    }
    return out;
  }

  std::string to_string(std::size_t max_terms = 12) const {
    std::string s;
    std::size_t shown = 0;
    for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
      const Coeff& c = c_[i];
      if (c == 0) continue;
      exp_t e = min_exp_ + exp_t(i);
      bool neg = c < 0;
      Coeff a = abs(c);
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (a != 1 || e == 0) s += a.get_str();
      if (e != 0) {
        if (a != 1) s += "*";
        s += "q";
        if (e != 1) s += "^" + std::to_string(e);
      }
      ++shown;
    }
    bool more = false;
    std::size_t nz = 0;
    for (const Coeff& c : c_) nz += (c != 0);
    more = nz > shown;
    if (s.empty()) s = "0";
    if (more) s += " + ...";
    if (prec_ < kPrecUnbounded) s += " + O(q^" + std::to_string(prec_) + ")";
    return s;
  }

  friend LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries out;
    out.prec_ = std::min(a.prec_, b.prec_);
    exp_t lo = kPrecUnbounded, hi = -kPrecUnbounded;
    if (!a.c_.empty()) {
      lo = std::min(lo, a.min_exp_);
      hi = std::max(hi, a.min_exp_ + exp_t(a.c_.size()));
    }
    if (!b.c_.empty()) {
      lo = std::min(lo, b.min_exp_);
      hi = std::max(hi, b.min_exp_ + exp_t(b.c_.size()));
    }
    if (out.prec_ < kPrecUnbounded) hi = std::min(hi, out.prec_);
    if (hi <= lo) return out;
    out.min_exp_ = lo;
    out.c_.assign(static_cast<std::size_t>(hi - lo), Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      exp_t e = a.min_exp_ + exp_t(i);
      if (e < hi) out.c_[static_cast<std::size_t>(e - lo)] += a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
      exp_t e = b.min_exp_ + exp_t(i);
      if (e < hi) out.c_[static_cast<std::size_t>(e - lo)] += b.c_[i];
    }
    out.normalize();
    return out;
  }

  friend LaurentSeries sub(const LaurentSeries& a, const LaurentSeries& b) {
    return add(a, b.negated());
  }

  friend LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) {
    // Valuation lower bound: for a window that is zero so far, nothing is
    // known before prec, so prec itself is the bound.
    exp_t va = a.c_.empty() ? a.prec_ : a.min_exp_;
    exp_t vb = b.c_.empty() ? b.prec_ : b.min_exp_;
    LaurentSeries out;
    out.prec_ = std::min(sat_add(a.prec_, vb), sat_add(b.prec_, va));
    if (a.c_.empty() || b.c_.empty()) return out;
    exp_t lo = a.min_exp_ + b.min_exp_;
    exp_t hi = (a.min_exp_ + exp_t(a.c_.size()) - 1) +
               (b.min_exp_ + exp_t(b.c_.size()) - 1) + 1;
    if (out.prec_ < kPrecUnbounded) hi = std::min(hi, out.prec_);
    if (hi <= lo) return out;
    out.min_exp_ = lo;
    out.c_.assign(static_cast<std::size_t>(hi - lo), Coeff(0));
    // Loop over the operand with fewer nonzero terms; skip structural zeros.
    const LaurentSeries* s = &a;
    const LaurentSeries* t = &b;
    auto nonzeros = [](const LaurentSeries& x) {
      std::size_t n = 0;
      for (const Coeff& c : x.c_) n += (c != 0);
      return n;
    };
    if (nonzeros(b) < nonzeros(a)) std::swap(s, t);
    for (std::size_t i = 0; i < s->c_.size(); ++i) {
      const Coeff& si = s->c_[i];
      if (si == 0) continue;
      exp_t es = s->min_exp_ + exp_t(i);
      std::size_t jmax = t->c_.size();
      if (hi - es - t->min_exp_ < exp_t(jmax))
        jmax = static_cast<std::size_t>(std::max<exp_t>(0, hi - es - t->min_exp_));
      for (std::size_t j = 0; j < jmax; ++j) {
        const Coeff& tj = t->c_[j];
        if (tj == 0) continue;
        out.c_[static_cast<std::size_t>(es + t->min_exp_ + exp_t(j) - lo)] += si * tj;
      }
    }
    out.normalize();
    return out;
  }

  // Multiplicative inverse. The leading coefficient must be a unit. Exact
  // inputs must be monomials or get truncated first (a generic polynomial
  // inverse has infinitely many terms).
  friend LaurentSeries invert(const LaurentSeries& s) {
    if (s.c_.empty()) {
      if (s.exact()) throw division_by_zero_error("invert: series is zero");
      throw division_by_zero_error(
          "invert: series is zero to its working precision O(q^" +
          std::to_string(s.prec_) + ")");
    }
    const Coeff& c0 = s.c_.front();
    if (c0 != 1 && c0 != -1)
      throw non_unit_error("invert: leading coefficient " + c0.get_str() +
                           " at q^" + std::to_string(s.min_exp_) + " is not a unit");
    exp_t v = s.min_exp_;
    if (s.exact()) {
      if (s.c_.size() == 1) return monomial(c0, -v);  // unit monomial
      throw precision_error(
          "invert: inverting an exact non-monomial yields an infinite series; "
          "truncate first");
    }
    // s = c0 q^v (1 + u) with u known on [1, P - v). The inverse of (1 + u)
    // is computed by back-substitution, then shifted to valuation -v. The
    // product s * invert(s) equals 1 through O(q^{P - v}) and the result is
    // trustworthy on [-v, P - 2v), matching the multiplication rule.
    std::size_t n = static_cast<std::size_t>(s.prec_ - v);
    std::vector<Coeff> inv(n, Coeff(0));
    inv[0] = c0;  // 1/c0 == c0 for units
    for (std::size_t k = 1; k < n; ++k) {
      Coeff acc(0);
      std::size_t imax = std::min(k, s.c_.size() - 1);
      for (std::size_t i = 1; i <= imax; ++i) {
        if (s.c_[i] == 0) continue;
        acc += s.c_[i] * inv[k - i];
      }
      if (acc != 0) inv[k] = -c0 * acc;
    }
    LaurentSeries out;
    out.min_exp_ = -v;
    out.prec_ = s.prec_ - 2 * v;
    out.c_ = std::move(inv);
    // Storage may extend past the knowledge window when v > 0; trim it.
    if (out.min_exp_ + exp_t(out.c_.size()) > out.prec_)
      out.c_.resize(static_cast<std::size_t>(out.prec_ - out.min_exp_));
    out.normalize();
    return out;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    return add(a, b);
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return sub(a, b);
  }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    return mul(a, b);
  }

 private:
  std::string prec_string() const {
    return prec_ >= kPrecUnbounded ? "unbounded" : std::to_string(prec_);
  }

  // Restore invariants: first and last stored coefficients nonzero (or no
  // storage at all), min_exp of an all-zero series reset to 0.
  void normalize() {
    std::size_t first = 0;
    while (first < c_.size() && c_[first] == 0) ++first;
    if (first == c_.size()) {
      c_.clear();
      min_exp_ = 0;
      return;
    }
    std::size_t last = c_.size();
    while (c_[last - 1] == 0) --last;
    if (first > 0) c_.erase(c_.begin(), c_.begin() + exp_t(first));
    c_.resize(last - first);
    min_exp_ += exp_t(first);
  }

  exp_t min_exp_ = 0;
  exp_t prec_ = kPrecUnbounded;
  std::vector<Coeff> c_;  // dense on [min_exp_, min_exp_ + size)
};

// Coefficientwise comparison on [lo, hi). Both inputs must know the whole
// window. identity/params fields are left for the caller to fill.
inline VerificationReport equal_up_to(const LaurentSeries& lhs,
                                      const LaurentSeries& rhs, exp_t lo,
                                      exp_t hi) {
  if (hi > lhs.prec() || hi > rhs.prec())
    throw precision_error(
        "equal_up_to: window end " + std::to_string(hi) +
        " exceeds available precision (lhs O(q^" +
        (lhs.prec() >= kPrecUnbounded ? std::string("inf") : std::to_string(lhs.prec())) +
        "), rhs O(q^" +
        (rhs.prec() >= kPrecUnbounded ? std::string("inf") : std::to_string(rhs.prec())) +
        "))");
  VerificationReport rep;
  rep.window_lo = lo;
  rep.window_hi = hi;
  rep.pass = true;
  for (exp_t e = lo; e < hi; ++e) {
    const Coeff& a = lhs.coeff_or_zero(e);
    const Coeff& b = rhs.coeff_or_zero(e);
    if (a != b) {
      rep.pass = false;
      rep.mismatch = Mismatch{e, a.get_str(), b.get_str()};
      break;
    }
  }
  return rep;
}

// Default window: from the smaller of the two minimal exponents.
inline VerificationReport equal_up_to(const LaurentSeries& lhs,
                                      const LaurentSeries& rhs, exp_t hi) {
  return equal_up_to(lhs, rhs, std::min(lhs.min_exp(), rhs.min_exp()), hi);
}

}  // namespace qseries
