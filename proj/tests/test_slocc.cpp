#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "majorcat/locc.hpp"
#include "majorcat/slocc.hpp"
#include "oracles.hpp"

using namespace majorcat;

namespace {

ExactVector ex(std::string_view s) { return parse_vector<Rational>(s); }
FloatVector fl(std::string_view s) { return parse_vector<double>(s); }

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("no error thrown");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

Rational q(long p, long r) { return Rational(p, r); }

}  // namespace

TEST_CASE("vidal_probability") {
  CHECK(vidal_probability(ex("0.6,0.2,0.2"), ex("0.5,0.4,0.1")) == q(4, 5));
  CHECK(vidal_probability(ex("0.5,0.4,0.1"), ex("0.6,0.2,0.2")) == q(1, 2));
  CHECK(vidal_probability(ex("0.6,0.2,0.2"), ex("0.6,0.2,0.2")) == 1);
  CHECK(vidal_probability(ex("0.39,0.21,0.13,0.13,0.07,0.07"), ex("0.325,0.26,0.175,0.14,0.065,0.035")) ==
        q(122, 135));
  CHECK(vidal_probability(ex("0.9,0.1"), ex("0.5,0.3,0.2")) == 0);
  CHECK(vidal_probability(ex("0.5,0.3,0.2"), ex("0.9,0.1")) == 1);
  CHECK(vidal_probability(fl("0.6,0.2,0.2"), fl("0.5,0.4,0.1")) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("multi-copy probabilities") {
  const auto a = ex("0.6,0.2,0.2");
  const auto b = ex("0.5,0.4,0.1");
  CHECK(multi_copy_probability(a, b, 0) == q(4, 5));
  CHECK(multi_copy_probability(a, b, 1) == q(8, 9));
  const auto curve = multi_copy_curve(a, b, 10);
  CHECK(curve[10] == q(752264, 787985));
  CHECK(round_decimal(curve[10], 3) == "0.955");
  CHECK(multi_copy_probability(ex("0.928,0.060,0.006,0.006"), ex("0.950,0.030,0.0195,0.0005"), 6) == 1);
  CHECK(multi_copy_probability(ex("0.40,0.34,0.15,0.11"), ex("0.50,0.21,0.17,0.12"), 6) == q(66011, 72455));
  const auto fcurve = multi_copy_curve(fl("0.6,0.2,0.2"), fl("0.5,0.4,0.1"), 4);
  CHECK(fcurve[4] == doctest::Approx(124.0 / 133.0).epsilon(1e-12));
}

TEST_CASE("ceiling and can_improve") {
  CHECK(ceiling(ex("0.60,0.21,0.10,0.09"), ex("0.55,0.25,0.10,0.10")) == q(9, 10));
  CHECK(ceiling(ex("0.40,0.34,0.15,0.11"), ex("0.50,0.21,0.17,0.12")) == q(11, 12));
  CHECK(ceiling(ex("0.6,0.3,0.1"), ex("0.6,0.3,0.1")) == 1);
  CHECK(ceiling(ex("0.5,0.3,0.2"), ex("0.9,0.1")) == 1);
  expect_error(ErrorCode::RankMismatch, [] { ceiling(ex("0.9,0.1"), ex("0.5,0.3,0.2")); });
  CHECK(can_improve(ex("0.6,0.2,0.2"), ex("0.5,0.4,0.1")));
  CHECK_FALSE(can_improve(ex("0.6,0.3,0.1"), ex("0.6,0.3,0.1")));
  CHECK(can_improve(ex("0.60,0.21,0.10,0.09"), ex("0.55,0.25,0.10,0.10")));
  CHECK_FALSE(can_improve(ex("0.5,0.4,0.1"), ex("0.6,0.2,0.2")));
}

TEST_CASE("minimizer_set and report") {
  CHECK(minimizer_set(ex("0.6,0.2,0.2"), ex("0.5,0.4,0.1")) == std::vector<Eigen::Index>{2});
  const auto l = minimizer_set(ex("0.60,0.21,0.10,0.09"), ex("0.55,0.25,0.10,0.10"));
  CHECK(l == std::vector<Eigen::Index>{2});  // ratios 8/9, 19/20
  expect_error(ErrorCode::PreconditionFailed, [] { minimizer_set(ex("0.5,0.4,0.1"), ex("0.6,0.2,0.2")); });
  const auto r = slocc_report(ex("0.6,0.2,0.2"), ex("0.5,0.4,0.1"));
  CHECK(r.p_direct == q(4, 5));
  CHECK(r.ceiling == 1);
  CHECK(r.improvable);
  CHECK(r.minimizer_set == std::vector<Eigen::Index>{2});
  CHECK(minimizer_set(fl("0.6,0.2,0.2"), fl("0.5,0.4,0.1")) == std::vector<Eigen::Index>{2});
}

TEST_CASE("catalyst criterion worked examples") {
  const auto a = ex("0.6,0.2,0.2");
  const auto b = ex("0.5,0.4,0.1");
  CHECK(feng_is_catalyst(a, b, ex("0.65,0.35")));
  CHECK(oracle_is_prob_catalyst(a, b, ex("0.65,0.35")));
  expect_error(ErrorCode::PreconditionFailed, [&] { feng_is_catalyst(b, a, ex("0.65,0.35")); });
  CHECK_FALSE(feng_is_catalyst(a, b, unit_vector<Rational>()));
  CHECK_FALSE(oracle_is_prob_catalyst(a, b, unit_vector<Rational>()));
  CHECK(is_prob_self_catalyst(a, b));
  CHECK(oracle_is_prob_catalyst(a, b, a));
  CHECK(is_prob_self_catalyst(ex("0.60,0.21,0.10,0.09"), ex("0.55,0.25,0.10,0.10")));
  CHECK(multi_copy_probability(ex("0.60,0.21,0.10,0.09"), ex("0.55,0.25,0.10,0.10"), 1) == q(9, 10));
  CHECK(feng_is_catalyst(fl("0.6,0.2,0.2"), fl("0.5,0.4,0.1"), fl("0.65,0.35")));
  expect_error(ErrorCode::PreconditionFailed,
               [] { feng_is_catalyst(ex("0.5,0.3,0.2"), ex("0.9,0.1"), ex("0.6,0.4")); });
}

TEST_CASE("property: vidal agrees with the prefix-sum oracle") {
  SeededStream rng(31, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = oracle::random_exact(rng, 1 + static_cast<int>(rng.next_u32() % 6), 9);
    const auto b = oracle::random_exact(rng, 1 + static_cast<int>(rng.next_u32() % 6), 9);
    const auto p = vidal_probability(a, b);
    CHECK(p == oracle::vidal(oracle::entries(a), oracle::entries(b)));
    CHECK(to_double(p) == doctest::Approx(vidal_probability(to_float(a), to_float(b))).epsilon(1e-12));
  }
}

TEST_CASE("property: ceiling bounds every multi-copy probability") {
  SeededStream rng(32, 0);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 3);
    const auto a = oracle::random_exact(rng, n, 12);
    const auto b = oracle::random_exact(rng, n, 12);
    const auto cap = ceiling(a, b);
    const auto curve = multi_copy_curve(a, b, n == 4 ? 4 : 6);
    for (const auto& p : curve) CHECK(p <= cap);
  }
}

TEST_CASE("property: E_1 term never decides an improvable minimum") {
  SeededStream rng(33, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u32() % 3);
    const auto a = oracle::random_exact(rng, n, 20);
    const auto b = oracle::random_exact(rng, n, 20);
    if (!can_improve(a, b)) continue;
    CHECK(vidal_probability(a, b) < 1);
    CHECK_FALSE(minimizer_set(a, b).empty());
  }
}

TEST_CASE("property: criterion matches oracle on exact instances") {
  SeededStream rng(34, 0);
  int tested = 0, positives = 0;
  for (int trial = 0; trial < 6000 && tested < 3000; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u32() % 3);
    const int k = 2 + static_cast<int>(rng.next_u32() % 2);
    const auto a = oracle::random_exact(rng, n, 12);
    const auto b = oracle::random_exact(rng, n, 12);
    const auto kappa = oracle::random_exact(rng, k, 12);
    if (!can_improve(a, b)) continue;
    ++tested;
    const bool expected = oracle_is_prob_catalyst(a, b, kappa);
    positives += expected;
    CAPTURE(format_vector(a));
    CAPTURE(format_vector(b));
    CAPTURE(format_vector(kappa));
    CHECK(feng_is_catalyst(a, b, kappa) == expected);
  }
  CHECK(tested >= 1000);
  CHECK(positives > 0);
  CHECK(positives < tested);
}

TEST_CASE("property: self-catalysis criterion matches oracle") {
  SeededStream rng(35, 0);
  int tested = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u32() % 4);
    const auto a = oracle::random_exact(rng, n, 15);
    const auto b = oracle::random_exact(rng, n, 15);
    if (!can_improve(a, b)) continue;
    ++tested;
    CHECK(is_prob_self_catalyst(a, b) == oracle_is_prob_catalyst(a, b, a));
  }
  CHECK(tested > 500);
}

TEST_CASE("reference multi-copy curves are non-decreasing") {
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"0.6,0.2,0.2", "0.5,0.4,0.1"},
      {"0.40,0.34,0.15,0.11", "0.50,0.21,0.17,0.12"},
      {"0.928,0.060,0.006,0.006", "0.950,0.030,0.0195,0.0005"}};
  for (const auto& [a, b] : pairs) {
    const auto curve = multi_copy_curve(ex(a), ex(b), 6);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] >= curve[i - 1]);
  }
}
