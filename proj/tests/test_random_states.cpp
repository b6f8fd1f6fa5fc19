#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "majorcat/locc.hpp"
#include "majorcat/random_states.hpp"

using namespace majorcat;

namespace {

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("no error thrown");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  using Block = std::array<std::uint32_t, 4>;
  CHECK(SeededStream::philox({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(SeededStream::philox({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(SeededStream::philox({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  auto a = SeededStream::for_trial(7, 10, 3);
  auto b = SeededStream::for_trial(7, 10, 3);
  auto c = SeededStream::for_trial(7, 10, 4);
  auto d = SeededStream::for_trial(8, 10, 3);
  int same_c = 0, same_d = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    same_c += x == c.next_u32();
    same_d += x == d.next_u32();
  }
  CHECK(same_c < 3);
  CHECK(same_d < 3);
}

TEST_CASE("uniform and normal moments") {
  SeededStream rng(1, 1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sn / n) < 5 / std::sqrt(double(n)));
  CHECK(std::abs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("haar_schmidt output is a valid sorted probability vector") {
  SeededStream rng(2, 0);
  for (const int n : {2, 3, 7, 30}) {
    for (int i = 0; i < 20; ++i) {
      const auto v = haar_schmidt(n, rng);
      REQUIRE(v.size() == n);
      CHECK(std::abs(v.sum() - 1.0) <= 1e-12);
      for (Eigen::Index k = 1; k < n; ++k) CHECK(v[k - 1] >= v[k]);
      CHECK(v.back() >= 0.0);
      if (n == 2) CHECK(v[0] >= 0.5);
    }
  }
  auto r1 = SeededStream::for_trial(9, 2, 0);
  auto r2 = SeededStream::for_trial(9, 2, 0);
  CHECK(haar_schmidt(2, r1) == haar_schmidt(2, r2));
  expect_error(ErrorCode::DimensionTooSmall, [&] { haar_schmidt(1, r1); });
}

TEST_CASE("page_entropy") {
  CHECK(std::abs(page_entropy(2) - 1.0 / (3.0 * std::numbers::ln2)) < 1e-12);
  CHECK(page_entropy(3) == doctest::Approx(0.6028528846191237).epsilon(1e-13));
  CHECK(page_entropy(5) == doctest::Approx(0.7037393835883992).epsilon(1e-13));
  CHECK(page_entropy(10) == doctest::Approx(0.7853821642351961).epsilon(1e-13));
  CHECK(page_entropy(20) == doctest::Approx(0.8335825120548176).epsilon(1e-13));
  CHECK(page_entropy(100) == doctest::Approx(0.8914390462475266).epsilon(1e-13));
  for (int d = 3; d <= 100; ++d) CHECK(page_entropy(d) > page_entropy(d - 1));
  CHECK(page_entropy(100) < 1.0);
  expect_error(ErrorCode::DimensionTooSmall, [] { page_entropy(1); });
}

TEST_CASE("mean entropy at d = 2 matches Page within 3 sigma") {
  const int n = 100000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    auto rng = SeededStream::for_trial(3, 2, static_cast<std::uint32_t>(i));
    const double h = normalized_entropy(haar_schmidt(2, rng));
    s += h;
    s2 += h * h;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / (n - 1));
  CHECK(std::abs(mean - page_entropy(2)) <= 3 * se);
}

TEST_CASE("incomparable pair sampling") {
  SeededStream rng(4, 0);
  for (int i = 0; i < 20; ++i) {
    const auto p = sample_incomparable_pair(3, rng, 1000000);
    CHECK(verdict(p.alpha, p.beta) == ConversionVerdict::Incomparable);
  }
  expect_error(ErrorCode::RejectionBudgetExhausted, [&] { sample_incomparable_pair(3, rng, 0); });
  int incomparable = 0;
  SeededStream big(4, 1);
  for (int i = 0; i < 10000; ++i) {
    const auto p = sample_pair(30, big);
    incomparable += verdict(p.alpha, p.beta) == ConversionVerdict::Incomparable;
  }
  CHECK(incomparable >= 0.9 * 10000);
}
