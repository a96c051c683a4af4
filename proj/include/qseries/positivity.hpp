#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/identities.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/report.hpp"
#include "qseries/series.hpp"

namespace qseries {

// An alternating partition-count sum S(n) = sum_j (-1)^j ( P(n - a(j)) -
// P(n - b(j)) ) with P = p or pbar.  Both offset families are strictly
// increasing with a(j) < b(j); P(x) = 0 for x < 0, so j effectively ranges
// while a(j) <= n (the two families deplete at different j).
struct AlternatingSumSpec {
  PartitionKind kind = PartitionKind::plain;
  std::function<exp_t(exp_t)> offset_a;
  std::function<exp_t(exp_t)> offset_b;
  std::string description;
};

inline const AlternatingSumSpec& corollary_spec(int which) {
  static const AlternatingSumSpec specs[4] = {
      {PartitionKind::plain, [](exp_t j) { return j * (13 * j + 11) / 2; },
       [](exp_t j) { return j * (13 * j + 15) / 2 + 1; },
       "sum_j (-1)^j ( p(n - j(13j+11)/2) - p(n - j(13j+15)/2 - 1) )"},
      {PartitionKind::overpartition,
       [](exp_t j) { return 28 * j * j + 20 * j; },
       [](exp_t j) { return 28 * j * j + 36 * j + 8; },
       "sum_j (-1)^j ( pbar(n - 28j^2 - 20j) - pbar(n - 28j^2 - 36j - 8) )"},
      {PartitionKind::plain, [](exp_t j) { return 24 * j * j + 8 * j; },
       [](exp_t j) { return 24 * j * j + 40 * j + 16; },
       "sum_j (-1)^j ( p(n - 24j^2 - 8j) - p(n - 24j^2 - 40j - 16) )"},
      {PartitionKind::overpartition,
       [](exp_t j) { return 54 * j * j + 42 * j; },
       [](exp_t j) { return 54 * j * j + 66 * j + 12; },
       "sum_j (-1)^j ( pbar(n - 54j^2 - 42j) - pbar(n - 54j^2 - 66j - 12) )"},
  };
  if (which < 1 || which > 4)
    throw domain_error("corollary_spec: which must be 1, 2, 3, or 4");
  return specs[which - 1];
}

// S(n) for n = 0..n_max from a single table built at n_max.
inline std::vector<Coeff> alternating_sums(const AlternatingSumSpec& spec,
                                           exp_t n_max) {
  if (n_max < 0) throw domain_error("alternating_sums: n_max must be >= 0");
  auto table = spec.kind == PartitionKind::plain ? partition_table(n_max)
                                                 : overpartition_table(n_max);
  std::vector<Coeff> out(static_cast<std::size_t>(n_max) + 1);
  for (exp_t n = 0; n <= n_max; ++n) {
    Coeff s = 0;
    for (exp_t j = 0; spec.offset_a(j) <= n; ++j) {
      Coeff term = table.at(n - spec.offset_a(j)) - table.at(n - spec.offset_b(j));
      if (j % 2) s -= term;
      else s += term;
    }
    out[static_cast<std::size_t>(n)] = std::move(s);
  }
  return out;
}

inline std::vector<Coeff> corollary_sums(int which, exp_t n_max) {
  return alternating_sums(corollary_spec(which), n_max);
}

// (-1)^{k-1} sum_{j=0}^{k-1} (-1)^j ( p(n - j(3j+1)/2) - p(n - j(3j+5)/2 - 1) ),
// evaluated literally for every n (at n=0 the raw value is (-1)^{k-1}; the
// stated inequality's domain is n >= 1).
inline std::vector<Coeff> truncated_pentagonal_sum(exp_t k, exp_t n_max) {
  if (k < 1) throw domain_error("truncated_pentagonal_sum: k must be >= 1");
  if (n_max < 0)
    throw domain_error("truncated_pentagonal_sum: n_max must be >= 0");
  auto table = partition_table(n_max);
  std::vector<Coeff> out(static_cast<std::size_t>(n_max) + 1);
  for (exp_t n = 0; n <= n_max; ++n) {
    Coeff s = 0;
    for (exp_t j = 0; j < k; ++j) {
      Coeff term = table.at(n - j * (3 * j + 1) / 2) -
                   table.at(n - j * (3 * j + 5) / 2 - 1);
      if (j % 2) s -= term;
      else s += term;
    }
    if (k % 2 == 0) s = -s;
    out[static_cast<std::size_t>(n)] = std::move(s);
  }
  return out;
}

// (-1)^k ( pbar(n) + 2 sum_{j=1}^k (-1)^j pbar(n - j^2) - [n=0] ): the
// square-truncated overpartition combination, with the sum starting at j=1
// (a j=0 start would duplicate the pbar(n) prefactor and evaluate to -3
// already at k=1, n=0) and the n=0 unit of the underlying series identity
// removed, so S(0) = 0 for every k.
inline std::vector<Coeff> overpartition_square_sum(exp_t k, exp_t n_max) {
  if (k < 1) throw domain_error("overpartition_square_sum: k must be >= 1");
  if (n_max < 0)
    throw domain_error("overpartition_square_sum: n_max must be >= 0");
  auto table = overpartition_table(n_max);
  std::vector<Coeff> out(static_cast<std::size_t>(n_max) + 1);
  for (exp_t n = 0; n <= n_max; ++n) {
    Coeff s = table.at(n);
    if (n == 0) s -= 1;
    for (exp_t j = 1; j <= k && j * j <= n; ++j) {
      Coeff term = 2 * table.at(n - j * j);
      if (j % 2) s -= term;
      else s += term;
    }
    if (k % 2) s = -s;
    out[static_cast<std::size_t>(n)] = std::move(s);
  }
  return out;
}

// pass iff every coefficient of `series` on [lo, hi) is >= 0; on failure the
// mismatch records the first negative coefficient against the bound 0.
inline VerificationReport check_nonnegative(const LaurentSeries& series,
                                            exp_t lo, exp_t hi) {
  if (hi > series.prec())
    throw precision_error(
        "check_nonnegative: window end " + std::to_string(hi) +
        " exceeds series precision " + std::to_string(series.prec()));
  VerificationReport rep;
  rep.identity = "nonnegativity";
  rep.window_lo = lo;
  rep.window_hi = hi;
  rep.pass = true;
  for (const auto& [e, c] : series.terms(lo, hi)) {
    if (c < 0) {
      rep.pass = false;
      rep.mismatch = Mismatch{e, c.get_str(), "0"};
      break;
    }
  }
  return rep;
}

// The table route (corollary_sums) against coefficient extraction from the
// registered theta identity's left side; corollaries 2 and 4 carry the
// overpartition weight, so their series side is multiplied by (-q;q)_inf.
inline VerificationReport cross_check_corollary(int which, exp_t n_max) {
  if (n_max < 0)
    throw domain_error("cross_check_corollary: n_max must be >= 0");
  const exp_t W = n_max + 1;
  auto series = build_side("thm" + std::to_string(which), Side::lhs, Params{}, W);
  if (which == 2 || which == 4)
    series = mul(series, poch_infinite(Monomial(-1, 1), 1, W)).truncated(W);
  auto sums = corollary_sums(which, n_max);
  auto table_side = LaurentSeries::from_coeffs(0, sums).truncated(W);
  auto rep = equal_up_to(series, table_side, 0, W);
  rep.identity = "corollary-" + std::to_string(which) + " cross-check";
  rep.params = {{"n_max", std::to_string(n_max)},
                {"which", std::to_string(which)}};
  return rep;
}

}  // namespace qseries
