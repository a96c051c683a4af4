// Transform-engine tests. The engine's closed-form claims (C_n evaluations,
// B_n against an independently built quadratic summation) are checked against
// oracles constructed locally from first principles; the transform itself is
// exercised both on the shipped systems and on randomized classical (d=e=m=1)
// instances, where it must hold for arbitrary A and D by pure summation
// exchange.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qseries/bailey.hpp"
#include "qseries/qfunctions.hpp"

using namespace qseries;
using M = Monomial;

namespace {

// Independent route to the m=2 system's B_n: the quadratic summation
//   sum_k a^k q^{k^2} [n,k]_q (agq;q)_n / ( (agq;q)_k (agq;q)_{n-k} )
// divided by the prefactor (a^2 q;q)_{2n} (q)_n / (aq;q)_n. The check below
// is cross-multiplied so only exact polynomial products are involved.
LaurentSeries quadratic_sum(M a, M g, exp_t n, exp_t W) {
  M agq = a.times(g).times(M(1, 1));
  auto S = LaurentSeries::zero(W);
  for (exp_t k = 0; k <= n; ++k) {
    M lead = a.pow(k);
    auto numer = mul(qbinomial(n, k), poch_finite(agq, 1, n))
                     .shifted(k * k + lead.exp)
                     .scaled(lead.sign);
    auto t = div_poch_finite(numer.truncated(W + std::max<exp_t>(0, numer.min_exp())),
                             agq, 1, k);
    t = div_poch_finite(t, agq, 1, n - k);
    S = add(S, t.truncated(W));
  }
  return S;
}

SequenceGen constant_rows(std::vector<long> cs) {
  auto term = [cs](exp_t n) {
    if (n < 0 || n >= exp_t(cs.size()) || cs[std::size_t(n)] == 0)
      return LaurentSeries::zero();
    return LaurentSeries::monomial(cs[std::size_t(n)], 0);
  };
  auto bound = [cs](exp_t n) {
    return n < exp_t(cs.size()) ? exp_t{0} : exp_t{1} << 40;
  };
  return {term, bound};
}

}  // namespace

TEST_CASE("compute_B classical delta reduction and single-term base case") {
  const exp_t W = 30;
  BaileySystem sys;
  sys.d = sys.e = sys.m = 1;
  sys.A = constant_rows({1});
  sys.U = constant_rows({1});
  sys.V = constant_rows({1});
  sys.D = constant_rows({1});
  // With A = U = V = delta_0, B_n collapses to [n = 0].
  auto b0 = compute_B(sys, 0, W);
  REQUIRE(b0.coefficient_at(0) == 1);
  for (exp_t n = 1; n <= 4; ++n) REQUIRE(compute_B(sys, n, W).is_zero());

  // B_0 = A_0 U_0 V_0 for any system.
  auto paper = quartic_system(M(1, 4), M(1, 2), W);
  auto b = compute_B(paper, 0, W);
  auto expect = mul(mul(paper.A.term(0), paper.U.term(0)), paper.V.term(0));
  REQUIRE(equal_up_to(b, expect, 0, W).pass);
}

TEST_CASE("m=2 B_n matches the quadratic summation route") {
  const exp_t W = 90;
  M a(1, 1), g(1, 2);
  auto sys = quadratic_system(a, g, W);
  M agq = a.times(g).times(M(1, 1));
  for (exp_t n = 0; n <= 8; ++n) {
    auto lhs = mul(mul(compute_B(sys, n, W),
                       poch_finite(a.pow(2).times(M(1, 1)), 1, 2 * n)),
                   poch_finite(M(1, 1), 1, n))
                   .truncated(W);
    auto rhs = mul(quadratic_sum(a, g, n, W),
                   poch_finite(a.times(M(1, 1)), 1, n))
                   .truncated(W);
    auto rep = equal_up_to(lhs, rhs, 0, W);
    INFO("n = " << n);
    REQUIRE(rep.pass);
  }
}

TEST_CASE("C_n closed forms") {
  SECTION("m=2 system: C_n = a^{4n} q^{4n^2} / (a^2 q;q)_inf") {
    const exp_t W = 80;
    M a(1, 1);
    auto sys = quadratic_system(a, M(1, 2), W);
    for (exp_t n = 0; n <= 4; ++n) {
      auto got = compute_C(sys, n, W);
      M lead = a.pow(4 * n);
      auto want = div_poch_infinite(LaurentSeries::one(W),
                                    a.pow(2).times(M(1, 1)), 1)
                      .shifted(4 * n * n + lead.exp)
                      .scaled(lead.sign)
                      .truncated(W);
      INFO("n = " << n);
      REQUIRE(equal_up_to(got, want, 0, W).pass);
    }
  }
  SECTION("m=4 system: C_n = a^{4n} q^{16n^2} / (aq;q)_inf") {
    const exp_t W = 100;
    M a(1, 4);
    auto sys = quartic_system(a, M(1, 2), W);
    for (exp_t n = 0; n <= 2; ++n) {
      auto got = compute_C(sys, n, W);
      M lead = a.pow(4 * n);
      auto want = div_poch_infinite(LaurentSeries::one(W), a.times(M(1, 1)), 1)
                      .shifted(16 * n * n + lead.exp)
                      .scaled(lead.sign)
                      .truncated(W);
      INFO("n = " << n);
      REQUIRE(equal_up_to(got, want, 0, W).pass);
    }
  }
  SECTION("classical kernels at a=q: C_0 = 1/(q^2;q)_inf") {
    const exp_t W = 60;
    BaileySystem sys;
    sys.d = sys.e = sys.m = 1;
    sys.D = detail::theta_diagonal(M(1, 1), W);
    sys.U = detail::unit_kernel(W);
    sys.V = detail::poch_kernel(M(1, 2), W);
    sys.A = constant_rows({1});
    auto got = compute_C(sys, 0, W);
    auto want = div_poch_infinite(LaurentSeries::one(W), M(1, 2), 1);
    REQUIRE(equal_up_to(got, want, 0, W).pass);
  }
}

TEST_CASE("verify_transform passes on the shipped systems") {
  SECTION("m=2 at a=q, g=q^2") {
    auto rep = verify_transform(quadratic_system(M(1, 1), M(1, 2), 120), 120);
    CAPTURE(rep.mismatch ? rep.mismatch->exponent : -1);
    REQUIRE(rep.pass);
    REQUIRE(rep.window_hi == 120);
  }
  SECTION("m=4 at a=q^4, b=q^2") {
    auto rep = verify_transform(quartic_system(M(1, 4), M(1, 2), 120), 120);
    REQUIRE(rep.pass);
  }
  SECTION("m=4 alternating at a=q^4") {
    auto rep = verify_transform(quartic_alternating_system(M(1, 4), 120), 120);
    REQUIRE(rep.pass);
  }
  SECTION("m=6 at a=q^6") {
    auto rep = verify_transform(sextic_system(M(1, 6), 150), 150);
    REQUIRE(rep.pass);
    REQUIRE(rep.identity == "bailey-transform");
    REQUIRE(rep.params.size() == 3);
    REQUIRE(rep.params[2].second == "6");
  }
}

TEST_CASE("classical transform holds for random A and D") {
  const exp_t W = 60;
  std::mt19937 rng(0xBA11E5);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> len(1, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> as(std::size_t(len(rng))), ds(std::size_t(len(rng)));
    for (auto& c : as) c = coeff(rng);
    for (auto& c : ds) c = coeff(rng);
    BaileySystem sys;
    sys.d = sys.e = sys.m = 1;
    sys.A = constant_rows(as);
    sys.D = constant_rows(ds);
    sys.U = detail::unit_kernel(W);
    sys.V = detail::poch_kernel(M(1, 2), W);
    auto rep = verify_transform(sys, W);
    INFO("trial " << trial);
    REQUIRE(rep.pass);
  }
}

TEST_CASE("truncation soundness: higher precision never rewrites coefficients") {
  auto sys = quartic_system(M(1, 4), M(1, 2), 120);
  auto b_lo = compute_B(sys, 5, 40);
  auto b_hi = compute_B(sys, 5, 100);
  REQUIRE(equal_up_to(b_lo, b_hi.truncated(40), 0, 40).pass);
  auto c_lo = compute_C(sys, 1, 40);
  auto c_hi = compute_C(sys, 1, 100);
  REQUIRE(equal_up_to(c_lo, c_hi.truncated(40), 0, 40).pass);
}

TEST_CASE("valuation bounds are honest lower bounds") {
  auto spot = [](const BaileySystem& sys, exp_t n_max) {
    for (exp_t n = 0; n <= n_max; ++n) {
      auto a = sys.A.term(n);
      if (!a.is_zero()) {
        INFO("A index " << n);
        REQUIRE(a.min_exp() >= sys.A.valuation_bound(n));
      }
      auto d = sys.D.term(n);
      if (!d.is_zero()) REQUIRE(d.min_exp() >= sys.D.valuation_bound(n));
      REQUIRE(sys.A.valuation_bound(n + 1) >= sys.A.valuation_bound(n));
      REQUIRE(sys.D.valuation_bound(n + 1) >= sys.D.valuation_bound(n));
    }
  };
  spot(quadratic_system(M(1, 1), M(1, 2), 400), 6);
  spot(quadratic_system(M(1, 2), M(1, 1), 400), 6);
  spot(quartic_system(M(1, 4), M(1, 4), 400), 5);
  spot(quartic_alternating_system(M(1, 6), 400), 5);
  spot(sextic_system(M(1, 6), 700), 5);
}

TEST_CASE("conjugate pair relation") {
  for (exp_t n = 0; n <= 4; ++n) {
    auto rep = conjugate_pair_check(M(1, 1), n, 80);
    INFO("a=q n=" << n);
    REQUIRE(rep.pass);
  }
  REQUIRE(conjugate_pair_check(M(1, 0), 0, 60).pass);
  for (exp_t n = 0; n <= 2; ++n) {
    auto rep = conjugate_pair_check(M(1, 4), n, 120);
    INFO("a=q^4 n=" << n);
    REQUIRE(rep.pass);
    REQUIRE(rep.identity == "conjugate-pair");
  }
}

TEST_CASE("engine error taxonomy") {
  const exp_t W = 30;
  SECTION("d must divide m") {
    BaileySystem sys;
    sys.d = 2;
    sys.e = 1;
    sys.m = 3;
    sys.A = sys.D = sys.U = sys.V = constant_rows({1});
    REQUIRE_THROWS_AS(compute_B(sys, 1, W), domain_error);
    REQUIRE_THROWS_AS(verify_transform(sys, W), domain_error);
  }
  SECTION("non-growing valuation bound trips the index cap guard") {
    BaileySystem sys;
    sys.d = sys.e = sys.m = 1;
    SequenceGen ones = {[](exp_t) { return LaurentSeries::one(W); },
                        [](exp_t) { return exp_t{0}; }};
    sys.A = sys.D = sys.U = sys.V = ones;
    REQUIRE_THROWS_AS(compute_C(sys, 0, W), guard_error);
  }
  SECTION("kernel precision shortfall is named") {
    BaileySystem sys;
    sys.d = sys.e = sys.m = 1;
    sys.A = sys.D = constant_rows({1, 1, 1});
    sys.U = detail::unit_kernel(20);
    sys.V = detail::poch_kernel(M(1, 2), 20);
    REQUIRE_THROWS_MATCHES(compute_B(sys, 2, 50), precision_error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("generator")));
  }
  SECTION("parameters must have nonnegative valuation") {
    REQUIRE_THROWS_AS(quartic_system(M(1, -1), M(1, 2), W), domain_error);
    REQUIRE_THROWS_AS(quadratic_system(M(1, 1), M(1, -2), W), domain_error);
    REQUIRE_THROWS_AS(conjugate_pair_check(M(1, -2), 0, W), domain_error);
  }
}
