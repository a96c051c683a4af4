#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qseries/positivity.hpp"

using namespace qseries;

namespace {

std::vector<long> as_longs(const std::vector<Coeff>& v, std::size_t count) {
  std::vector<long> out;
  for (std::size_t i = 0; i < count && i < v.size(); ++i)
    out.push_back(v[i].get_si());
  return out;
}

// The square-truncated overpartition display with the inner sum started at
// j = 0, kept only as a regression record: the j = 0 term duplicates the
// pbar(n) prefactor, so this reading goes negative immediately.
Coeff square_sum_j_from_zero(exp_t k, exp_t n) {
  auto table = overpartition_table(n);
  Coeff s = table.at(n);
  for (exp_t j = 0; j <= k; ++j) {
    Coeff term = 2 * table.at(n - j * j);
    if (j % 2) s -= term;
    else s += term;
  }
  if (k % 2) s = -s;
  return s;
}

}  // namespace

TEST_CASE("corollary offset families are increasing and anchored at zero") {
  for (int which = 1; which <= 4; ++which) {
    const auto& spec = corollary_spec(which);
    CHECK_FALSE(spec.description.empty());
    CHECK(spec.kind == (which % 2 ? PartitionKind::plain
                                  : PartitionKind::overpartition));
    CHECK(spec.offset_a(0) == 0);
    for (exp_t j = 0; j < 40; ++j) {
      CHECK(spec.offset_a(j) < spec.offset_b(j));
      CHECK(spec.offset_a(j) < spec.offset_a(j + 1));
      CHECK(spec.offset_b(j) < spec.offset_b(j + 1));
    }
  }
  CHECK_THROWS_AS(corollary_spec(0), domain_error);
  CHECK_THROWS_AS(corollary_spec(5), domain_error);
  CHECK_THROWS_AS(corollary_sums(1, -1), domain_error);
}

TEST_CASE("corollary sums match hand values and stay nonnegative") {
  auto c1 = corollary_sums(1, 10);
  CHECK(as_longs(c1, 11) ==
        std::vector<long>{1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12});

  // The second family's offsets start at a(0) = 0, b(0) = 8, so the low
  // coefficients are plain overpartition counts: S(0) = pbar(0) = 1 and
  // S(8) = pbar(8) - pbar(0) = 99.
  auto c2 = corollary_sums(2, 10);
  auto pbar = overpartition_table(10);
  CHECK(c2[0] == 1);
  for (exp_t n = 0; n < 8; ++n)
    CHECK(c2[static_cast<std::size_t>(n)] == pbar.at(n));
  CHECK(c2[8] == 99);

  auto c3 = corollary_sums(3, 20);
  auto p = partition_table(20);
  for (exp_t n = 0; n < 16; ++n)
    CHECK(c3[static_cast<std::size_t>(n)] == p.at(n));
  CHECK(c3[16] == p.at(16) - p.at(0));

  for (int which = 1; which <= 4; ++which) {
    auto sums = corollary_sums(which, 400);
    REQUIRE(sums.size() == 401);
    for (const auto& v : sums) CHECK(v >= 0);
  }
}

TEST_CASE("truncated pentagonal sums reproduce partition tails") {
  auto k1 = truncated_pentagonal_sum(1, 50);
  auto p = partition_table(50);
  for (exp_t n = 0; n <= 50; ++n)
    CHECK(k1[static_cast<std::size_t>(n)] == p.at(n) - p.at(n - 1));
  CHECK(k1[0] == 1);
  CHECK(k1[6] == 4);

  auto k2 = truncated_pentagonal_sum(2, 10);
  CHECK(k2[7] == 1);
  // At n = 0 only the j = 0 term survives, so the raw value is (-1)^{k-1};
  // the inequality these sums witness runs over n >= 1.
  CHECK(k2[0] == -1);
  CHECK(truncated_pentagonal_sum(3, 0)[0] == 1);
  CHECK(truncated_pentagonal_sum(4, 0)[0] == -1);

  for (exp_t k = 1; k <= 6; ++k) {
    auto sums = truncated_pentagonal_sum(k, 200);
    for (std::size_t n = 1; n < sums.size(); ++n) CHECK(sums[n] >= 0);
  }

  CHECK_THROWS_AS(truncated_pentagonal_sum(0, 10), domain_error);
  CHECK_THROWS_AS(truncated_pentagonal_sum(1, -1), domain_error);
}

TEST_CASE("overpartition square sums vanish at zero and stay nonnegative") {
  auto k1 = overpartition_square_sum(1, 8);
  CHECK(as_longs(k1, 9) == std::vector<long>{0, 0, 0, 0, 2, 4, 8, 16, 28});

  for (exp_t k = 1; k <= 6; ++k) {
    auto sums = overpartition_square_sum(k, 200);
    CHECK(sums[0] == 0);
    for (const auto& v : sums) CHECK(v >= 0);
  }

  // Regression record for the rejected j = 0 start of the inner sum.
  CHECK(square_sum_j_from_zero(1, 0) == -3);
  CHECK(square_sum_j_from_zero(1, 1) == -4);

  CHECK_THROWS_AS(overpartition_square_sum(0, 10), domain_error);
  CHECK_THROWS_AS(overpartition_square_sum(1, -1), domain_error);
}

TEST_CASE("check_nonnegative flags the first negative coefficient") {
  auto one_minus_q = LaurentSeries::from_coeffs(0, {Coeff(1), Coeff(-1)});
  auto rep = check_nonnegative(one_minus_q, 0, 2);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.mismatch.has_value());
  CHECK(rep.mismatch->exponent == 1);
  CHECK(rep.mismatch->lhs == "-1");
  CHECK(rep.mismatch->rhs == "0");

  // Windows that exclude the negative coefficient pass.
  CHECK(check_nonnegative(one_minus_q, 0, 1).pass);

  auto thm1 = build_side("thm1", Side::rhs, Params{}, 200);
  CHECK(check_nonnegative(thm1, 0, 200).pass);

  auto thm2 = build_side("thm2", Side::rhs, Params{}, 200);
  auto weighted = mul(thm2, poch_infinite(Monomial(-1, 1), 1, 200)).truncated(200);
  CHECK(check_nonnegative(weighted, 0, 200).pass);

  CHECK_THROWS_AS(check_nonnegative(LaurentSeries::one(10), 0, 11),
                  precision_error);
}

TEST_CASE("theta sums over the Euler product have nonnegative coefficients") {
  for (exp_t M = 3; M <= 13; M += 2) {
    auto s = div_poch_infinite(theta_sum_odd_M(M, 200), Monomial(1, 1), 1);
    auto rep = check_nonnegative(s, 0, 200);
    INFO("M = " << M);
    CHECK(rep.pass);
  }
}

TEST_CASE("cross checks tie table sums to the theta series") {
  for (int which = 1; which <= 4; ++which) {
    auto rep = cross_check_corollary(which, 150);
    INFO("which = " << which);
    CHECK(rep.pass);
    CHECK(rep.identity == "corollary-" + std::to_string(which) +
                              " cross-check");
    CHECK(rep.window_lo == 0);
    CHECK(rep.window_hi == 151);
    REQUIRE(rep.params.size() == 2);
    CHECK(rep.params[0] == std::make_pair(std::string("n_max"),
                                          std::string("150")));
  }
  CHECK_THROWS_AS(cross_check_corollary(0, 10), domain_error);
  CHECK_THROWS_AS(cross_check_corollary(5, 10), domain_error);
  CHECK_THROWS_AS(cross_check_corollary(1, -1), domain_error);
}
