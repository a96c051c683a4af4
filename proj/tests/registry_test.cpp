#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "qseries/identities.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/series.hpp"

using namespace qseries;
using Catch::Matchers::ContainsSubstring;

namespace {

LaurentSeries over_euler(const std::vector<std::pair<exp_t, int>>& family,
                         exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (auto [e, s] : family)
    if (e < W) S = add(S, LaurentSeries::from_coeffs(e, {Coeff(s)}).truncated(W));
  return div_poch_infinite(S, Monomial(1, 1), 1);
}

// ---- near-miss variants, each the registered form with one documented
// alteration; the tests pin their first mismatches so a silent change to the
// registered builders cannot drift toward them ----

// thm1 rhs without the (1-q^{n+1})/(1-q) numerator factor
LaurentSeries thm1_rhs_variant(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; n * n + 2 * n < W; ++n) {
    auto inner = LaurentSeries::zero();
    for (exp_t k = 0; k <= n; ++k)
      inner = add(inner, qbinomial(n, k).shifted(k * k + k));
    auto numer = inner.shifted(n * n + 2 * n);
    auto rest = div_poch_finite(LaurentSeries::one(W), Monomial(1, 2), 1, 2 * n + 1);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// thm2 lhs with exponent families 40j^2-4j+4 and 40j^2+12j+12
LaurentSeries thm2_lhs_variant(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  for (exp_t j = 0; 40 * j * j - 4 * j + 4 < W; ++j) {
    int s = j % 2 ? -1 : 1;
    family.push_back({40 * j * j - 4 * j + 4, s});
    family.push_back({40 * j * j + 12 * j + 12, -s});
  }
  return over_euler(family, W);
}

// thm2 rhs with binomial [2n,2k]_{q^2} and outer denominator (q;q)_{2n+3}
LaurentSeries thm2_rhs_variant(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; 5 * n < W + 8; ++n) {
    auto outer_num = poch_finite(Monomial(-1, -1), 2, n);
    auto inner = LaurentSeries::zero(W + 2 * n + 4);
    for (exp_t k = 0; k <= n; ++k) {
      auto numer = mul(qbinomial(2 * n, 2 * k, 2),
                       poch_finite(Monomial(-1, 4), 4, k + 1))
                       .shifted((n - 2 * k) * (n - 2 * k) + 5 * n + 2 * k);
      exp_t pad = std::max<exp_t>(0, -numer.min_exp());
      auto rest = LaurentSeries::one(W + 2 * n + 4 + pad);
      rest = rest.div_binomial(-1, 4 * k + 2);
      rest = div_poch_finite(rest, Monomial(-1, 3 - 2 * n), 2, 2 * k);
      inner = add(inner, mul(numer, rest).truncated(W + 2 * n + 4));
    }
    auto numer = mul(outer_num, inner);
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = div_poch_finite(LaurentSeries::one(W + pad), Monomial(1, 1), 1,
                                2 * n + 3);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// thm3 rhs closed double-sum variant with per-k factor (1+q^{4k+4})
LaurentSeries thm3_rhs_variant(exp_t W) {
  auto S = LaurentSeries::zero(W);
  for (exp_t n = 0; 5 * n < W + 8; ++n) {
    auto outer_num = poch_finite(Monomial(-1, -1), 2, n);
    auto inner = LaurentSeries::zero(W + 2 * n + 4);
    for (exp_t k = 0; k <= n; ++k) {
      auto numer = mul(qbinomial(2 * n, 2 * k, 2),
                       poch_finite(Monomial(-1, 4 * k + 4), 1, 1))
                       .shifted((n - 2 * k) * (n - 2 * k) + 5 * n + 6 * k);
      auto rest = LaurentSeries::one(W + 2 * n + 4);
      rest = rest.div_binomial(-1, 4 * k + 2);
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

// thm4 rhs with the k-independent (1+q^4+q^8) inner factor
LaurentSeries thm4_rhs_variant(exp_t W) {
  auto S = LaurentSeries::zero(W);
  auto one_q4_q8 = LaurentSeries::from_coeffs(
      0, {Coeff(1), Coeff(0), Coeff(0), Coeff(0), Coeff(1), Coeff(0), Coeff(0),
          Coeff(0), Coeff(1)});
  for (exp_t n = 0; 5 * n < W + 8; ++n) {
    auto outer_num = poch_finite(Monomial(-1, -1), 2, n);
    auto inner = LaurentSeries::zero(W + 2 * n + 4);
    for (exp_t k = 0; k <= n; ++k) {
      auto numer = mul(mul(qbinomial(2 * n, 2 * k, 2), one_q4_q8),
                       poch_finite(Monomial(-1, 6 + 4 * k), 1, 1))
                       .shifted((n - 2 * k) * (n - 2 * k) + 7 * n + 2 * k);
      exp_t pad = std::max<exp_t>(0, -numer.min_exp());
      auto rest = LaurentSeries::one(W + 2 * n + 4 + pad);
      rest = rest.div_binomial(-1, 2 * k + 2);
      rest = rest.div_binomial(-1, 2 * k + 4);
      rest = div_poch_finite(rest, Monomial(-1, 3 - 2 * n), 2, 2 * k);
      inner = add(inner, mul(numer, rest).truncated(W + 2 * n + 4));
    }
    auto numer = mul(outer_num, inner);
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + pad);
    rest = div_poch_finite(rest, Monomial(1, 2), 2, n);
    rest = div_poch_finite(rest, Monomial(1, 1), 2, n + 3);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// guo-zeng-trunc rhs with binomial [n-1,k-1]_q instead of [n-1,k]_q
LaurentSeries guo_zeng_rhs_variant(exp_t k, exp_t W) {
  auto S = LaurentSeries::one(W);
  int sign = k % 2 ? -1 : 1;
  for (exp_t n = k + 1; (k + 1) * n < W; ++n) {
    auto numer = mul(mul(poch_finite(Monomial(-1, 1), 1, k),
                         poch_finite(Monomial(-1, 0), 1, n - k)),
                     qbinomial(n - 1, k - 1))
                     .shifted((k + 1) * n)
                     .scaled(sign);
    auto rest = div_poch_finite(LaurentSeries::one(W), Monomial(1, 1), 1, n);
    S = add(S, mul(numer, rest).truncated(W));
  }
  return S;
}

// single-sum companion of the usual quartic shape for the alternating pair
// (with (-q^4;q^8)_k / (-q^8;q^8)_k and +q^{3-2n} in the lower factor)
LaurentSeries bw2_rhs_variant(const Monomial& a, exp_t n, exp_t W) {
  auto S = LaurentSeries::zero(W + 2 * n + 2);
  for (exp_t k = 0; 2 * k <= n; ++k) {
    auto numer = mul(mul(poch_finite(Monomial(-1, 4), 8, k),
                         poch_finite(Monomial(-a.sign, a.exp + 4), 4, k)),
                     poch_finite(Monomial(1, -2 * n), 2, 2 * k))
                     .shifted(8 * k);
    if (numer.is_zero()) continue;
    exp_t pad = std::max<exp_t>(0, -numer.min_exp());
    auto rest = LaurentSeries::one(W + 2 * n + 2 + pad);
    rest = div_poch_finite(rest, Monomial(-1, 8), 8, k);
    rest = div_poch_finite(rest, Monomial(a.sign, a.exp + 2), 4, k);
    rest = div_poch_finite(rest, Monomial(1, 3 - 2 * n), 2, 2 * k);
    S = add(S, mul(numer, rest).truncated(W + 2 * n + 2));
  }
  auto numer = poch_finite(Monomial(-1, -1), 2, n).shifted(n);
  auto out = mul(S, numer);
  out = div_poch_finite(out, Monomial(1, 2), 2, n);
  out = div_poch_finite(out, a.times(Monomial(1, 1)), 2, n);
  return out.truncated(W);
}

// concluding-0 lhs with the n=0 term at its literal weight 2
LaurentSeries concluding0_lhs_variant(exp_t W) {
  std::vector<std::pair<exp_t, int>> family;
  family.push_back({0, 2});
  for (exp_t n = 1; (13 * n * n - n) / 2 < W; ++n) {
    int s = n % 2 ? -1 : 1;
    family.push_back({(13 * n * n - n) / 2, s});
    family.push_back({(13 * n * n + n) / 2, s});
  }
  return over_euler(family, W);
}

void require_pin(const VerificationReport& rep, exp_t exponent,
                 const std::string& lhs, const std::string& rhs) {
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.mismatch.has_value());
  CHECK(rep.mismatch->exponent == exponent);
  CHECK(rep.mismatch->lhs == lhs);
  CHECK(rep.mismatch->rhs == rhs);
}

}  // namespace

TEST_CASE("catalog lists the expected identities") {
  const auto& reg = list_identities();
  REQUIRE(reg.size() >= 18);
  for (const std::string id :
       {"andrews-merca-trunc", "guo-zeng-trunc", "andrews-merca-overp",
        "rogers-fine", "andrews-1986", "bressoud-3.4", "help-1",
        "berkovich-warnaar-1", "berkovich-warnaar-2", "berkovich-warnaar-3",
        "help-2-0", "thm1", "thm2", "thm3", "thm4", "concluding-0",
        "concluding-1", "concluding-2", "general-odd-M"}) {
    const auto& d = find_identity(id);
    CHECK(d.id == id);
    CHECK_FALSE(d.summary.empty());
    CHECK_FALSE(d.reference.empty());
    CHECK_FALSE(d.grid.empty());
    CHECK(d.default_order > 0);
  }
  // ids are unique
  for (std::size_t i = 0; i < reg.size(); ++i)
    for (std::size_t j = i + 1; j < reg.size(); ++j)
      REQUIRE(reg[i].id != reg[j].id);
}

TEST_CASE("every registered identity verifies across its grid") {
  for (const auto& d : list_identities()) {
    for (const auto& p : d.grid) {
      auto rep = verify(d.id, p, 0, d.default_order);
      INFO(d.id);
      if (rep.mismatch) {
        INFO("first mismatch at " << rep.mismatch->exponent << ": "
                                  << rep.mismatch->lhs << " vs "
                                  << rep.mismatch->rhs);
      }
      REQUIRE(rep.pass);
      REQUIRE(rep.identity == d.id);
      REQUIRE(rep.window_lo == 0);
      REQUIRE(rep.window_hi == d.default_order);
    }
  }
}

TEST_CASE("pinned expansions and windows") {
  SECTION("thm1 lhs is the mod-13 theta numerator convolved with p(n)") {
    auto L = build_side("thm1", Side::lhs, Params{}, 30);
    auto table = partition_table(40);
    // numerator exponents 0, 1, 12, 15 with signs +,-,-,+ below 30
    for (exp_t n = 0; n < 30; ++n) {
      Coeff expected = table.at(n);
      if (n >= 1) expected -= table.at(n - 1);
      if (n >= 12) expected -= table.at(n - 12);
      if (n >= 15) expected += table.at(n - 15);
      REQUIRE(L.coefficient_at(n) == expected);
    }
  }
  SECTION("thm1 rhs at tiny order: the n=0 term contributes 1 at q^2") {
    auto R = build_side("thm1", Side::rhs, Params{}, 3);
    REQUIRE(R.coefficient_at(2) == Coeff(1));
  }
  SECTION("concluding-2 rhs equals the triple product over the Euler product") {
    auto R = build_side("concluding-2", Side::rhs, Params{}, 40);
    auto route = mul(triple_product_rhs(13, 40),
                     invert(poch_infinite(Monomial(1, 1), 1, 40)));
    REQUIRE(equal_up_to(R, route, 0, 40).pass);
  }
  SECTION("windowed verifications used as contract examples") {
    REQUIRE(verify("andrews-merca-trunc", Params{}.set("k", exp_t{1}), 0, 100).pass);
    REQUIRE(verify("guo-zeng-trunc", Params{}.set("k", exp_t{2}), 0, 100).pass);
    REQUIRE(verify("thm3", Params{}, 0, 200).pass);
  }
}

TEST_CASE("theta numerators regenerate the corollary offset families") {
  struct Family {
    const char* id;
    exp_t (*a)(exp_t);
    exp_t (*b)(exp_t);
  };
  const Family families[] = {
      {"thm1", [](exp_t j) { return j * (13 * j + 11) / 2; },
       [](exp_t j) { return j * (13 * j + 15) / 2 + 1; }},
      {"thm2", [](exp_t j) { return 28 * j * j + 20 * j; },
       [](exp_t j) { return 28 * j * j + 36 * j + 8; }},
      {"thm3", [](exp_t j) { return 24 * j * j + 8 * j; },
       [](exp_t j) { return 24 * j * j + 40 * j + 16; }},
      {"thm4", [](exp_t j) { return 54 * j * j + 42 * j; },
       [](exp_t j) { return 54 * j * j + 66 * j + 12; }},
  };
  const exp_t W = 200;
  for (const auto& fam : families) {
    auto numer = mul(build_side(fam.id, Side::lhs, Params{}, W),
                     poch_infinite(Monomial(1, 1), 1, W));
    auto expected = LaurentSeries::zero(W);
    for (exp_t j = 0; fam.a(j) < W || fam.b(j) < W; ++j) {
      int s = j % 2 ? -1 : 1;
      if (fam.a(j) < W)
        expected = add(expected,
                       LaurentSeries::from_coeffs(fam.a(j), {Coeff(s)}));
      if (fam.b(j) < W)
        expected = add(expected,
                       LaurentSeries::from_coeffs(fam.b(j), {Coeff(-s)}));
    }
    INFO(fam.id);
    REQUIRE(equal_up_to(numer, expected.truncated(W), 0, W).pass);
  }
}

TEST_CASE("near-miss variants fail at their pinned first mismatches") {
  SECTION("thm1 without the (1-q^{n+1})/(1-q) factor") {
    auto L = build_side("thm1", Side::lhs, Params{}, 60);
    require_pin(equal_up_to(L, thm1_rhs_variant(60), 0, 60), 4, "2", "1");
  }
  SECTION("thm2 with the drifted exponent family and doubled binomial") {
    require_pin(equal_up_to(thm2_lhs_variant(60), thm2_rhs_variant(60), 0, 60),
                0, "0", "1");
  }
  SECTION("thm3 closed double-sum variant") {
    auto L = build_side("thm3", Side::lhs, Params{}, 60);
    require_pin(equal_up_to(L, thm3_rhs_variant(60), 0, 60), 8, "22", "21");
  }
  SECTION("thm4 with the k-independent (1+q^4+q^8)") {
    auto L = build_side("thm4", Side::lhs, Params{}, 60);
    require_pin(equal_up_to(L, thm4_rhs_variant(60), 0, 60), 4, "5", "6");
  }
  SECTION("guo-zeng-trunc with the [n-1,k-1] binomial") {
    auto L = build_side("guo-zeng-trunc", Side::lhs, Params{}.set("k", exp_t{1}), 40);
    require_pin(equal_up_to(L, guo_zeng_rhs_variant(1, 40), 0, 40), 7, "-16",
                "-14");
  }
  SECTION("single-sum quartic companion for the alternating pair") {
    for (Monomial a : {Monomial(1, 4), Monomial(1, 6)}) {
      Params base = Params{}.set("a", a);
      for (exp_t n : {0, 1}) {
        auto L = build_side("berkovich-warnaar-2", Side::lhs,
                            Params(base).set("n", n), 40);
        REQUIRE(equal_up_to(L, bw2_rhs_variant(a, n, 40), 0, 40).pass);
      }
      for (exp_t n : {2, 3}) {
        auto L = build_side("berkovich-warnaar-2", Side::lhs,
                            Params(base).set("n", n), 40);
        require_pin(equal_up_to(L, bw2_rhs_variant(a, n, 40), 0, 40), 0, "1",
                    "0");
      }
      auto L5 = build_side("berkovich-warnaar-2", Side::lhs,
                           Params(base).set("n", exp_t{5}), 40);
      require_pin(equal_up_to(L5, bw2_rhs_variant(a, 5, 40), 0, 40), 2, "1",
                  "0");
    }
  }
  SECTION("concluding-0 with the n=0 term at weight 2") {
    auto R = build_side("concluding-0", Side::rhs, Params{}, 40);
    require_pin(equal_up_to(concluding0_lhs_variant(40), R, 0, 40), 0, "2",
                "1");
  }
}

TEST_CASE("unknown ids and schema violations raise domain_error") {
  REQUIRE_THROWS_MATCHES(find_identity("no-such-identity"), domain_error,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("unknown identity")));
  REQUIRE_THROWS_AS(build_side("no-such-identity", Side::lhs, Params{}, 10),
                    domain_error);
  REQUIRE_THROWS_AS(verify("no-such-identity", Params{}, 0, 10), domain_error);

  SECTION("missing parameter") {
    REQUIRE_THROWS_MATCHES(
        verify("bressoud-3.4",
               Params{}.set("a", Monomial(1, 1)).set("g", Monomial(1, 1)), 0, 10),
        domain_error,
        Catch::Matchers::MessageMatches(
            ContainsSubstring("requires integer parameter 'n'")));
    REQUIRE_THROWS_MATCHES(
        verify("rogers-fine",
               Params{}.set("a", Monomial(1, 1)).set("b", Monomial(1, 1)), 0, 10),
        domain_error,
        Catch::Matchers::MessageMatches(
            ContainsSubstring("requires monomial parameter 'c'")));
  }
  SECTION("unexpected parameter") {
    REQUIRE_THROWS_MATCHES(
        verify("thm1", Params{}.set("k", exp_t{1}), 0, 10), domain_error,
        Catch::Matchers::MessageMatches(
            ContainsSubstring("does not take parameter 'k'")));
  }
  SECTION("wrong kind: integer where a monomial is expected") {
    auto p = Params{}.set("a", exp_t{4}).set("n", exp_t{1});
    REQUIRE_THROWS_AS(verify("berkovich-warnaar-2", p, 0, 10), domain_error);
  }
  SECTION("value constraints") {
    REQUIRE_THROWS_AS(
        verify("general-odd-M", Params{}.set("M", exp_t{4}), 0, 10),
        domain_error);
    REQUIRE_THROWS_AS(
        verify("general-odd-M", Params{}.set("M", exp_t{1}), 0, 10),
        domain_error);
    REQUIRE_THROWS_AS(
        verify("andrews-merca-trunc", Params{}.set("k", exp_t{0}), 0, 10),
        domain_error);
    REQUIRE_THROWS_AS(
        verify("rogers-fine",
               Params{}
                   .set("a", Monomial(1, 1))
                   .set("b", Monomial(1, 1))
                   .set("c", Monomial(1, 0)),
               0, 10),
        domain_error);
    REQUIRE_THROWS_AS(verify("bressoud-3.4",
                             Params{}
                                 .set("a", Monomial(1, 0))
                                 .set("g", Monomial(1, 1))
                                 .set("n", exp_t{2}),
                             0, 10),
                      domain_error);
    REQUIRE_THROWS_AS(verify("andrews-1986",
                             Params{}
                                 .set("a", Monomial(1, 1))
                                 .set("b", Monomial(1, 3))
                                 .set("n", exp_t{-1}),
                             0, 10),
                      domain_error);
  }
}

TEST_CASE("verify reports carry identity, params, and window") {
  auto rep = verify("berkovich-warnaar-1",
                    Params{}
                        .set("a", Monomial(1, 4))
                        .set("b", Monomial(1, 2))
                        .set("n", exp_t{3}),
                    0, 80);
  REQUIRE(rep.pass);
  REQUIRE(rep.identity == "berkovich-warnaar-1");
  REQUIRE(rep.params.size() == 3);
  REQUIRE(rep.params[0] == std::pair<std::string, std::string>{"a", "q^4"});
  REQUIRE(rep.params[1] == std::pair<std::string, std::string>{"b", "q^2"});
  REQUIRE(rep.params[2] == std::pair<std::string, std::string>{"n", "3"});
  REQUIRE(rep.window_lo == 0);
  REQUIRE(rep.window_hi == 80);
}
