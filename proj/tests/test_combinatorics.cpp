#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "cachepower/combinatorics.hpp"
#include "oracle.hpp"

using namespace cachepower;

TEST_CASE("binom basics") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(3, 5) == 0);  // k > n convention (empty product)
  CHECK(binom(0, 0) == 1);
  CHECK(binom(7, 0) == 1);
  CHECK(binom(7, 7) == 1);
  CHECK(binom(10, 3) == binom(10, 7));
  CHECK(binom(4, -1) == 0);
  CHECK_THROWS_AS(binom(-1, 0), std::invalid_argument);
}

TEST_CASE("binom satisfies the Pascal identity") {
  for (int n = 1; n <= 40; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k));
}

TEST_CASE("binom overflow is reported, never wrapped") {
  CHECK(binom(62, 31) > 0);
  CHECK_THROWS_AS(binom(70, 35), std::overflow_error);
}

TEST_CASE("log_binom agrees with the exact value") {
  for (int n = 0; n <= 50; n += 5)
    for (int k = 0; k <= n; ++k) {
      const double expect = std::log(static_cast<double>(binom(n, k)));
      CHECK(std::abs(log_binom(n, k) - expect) < 1e-10 * std::max(1.0, expect));
    }
  CHECK(log_binom(3, 5) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("class multiplicity matches the frozen small cases") {
  // brute-force over the 4 demand vectors of K=2, N=2
  CHECK(class_multiplicity(class_from_leaders({1}, 2), 2) == 2);
  CHECK(class_multiplicity(class_from_leaders({1, 2}, 2), 2) == 2);
  // all 8 of K=3, N=2
  CHECK(class_multiplicity(class_from_leaders({1}, 3), 2) == 2);
  CHECK(class_multiplicity(class_from_leaders({1, 2}, 3), 2) == 4);
  CHECK(class_multiplicity(class_from_leaders({1, 3}, 3), 2) == 2);
  CHECK(class_multiplicity(class_from_leaders({1, 2, 3}, 3), 2) == 0);  // N_d > N
  // one user, N choices
  for (int files : {1, 4, 100})
    CHECK(class_multiplicity(class_from_leaders({1}, 1), files) == files);
}

TEST_CASE("class multiplicities partition the demand space") {
  for (int users = 1; users <= 4; ++users)
    for (int files = 1; files <= 4; ++files) {
      const auto expected = oracle::class_counts_by_brute_force(users, files);
      std::map<std::vector<int>, long long> got;
      long long total = 0;
      for (const ClassWeight& w : enumerate_classes(users, files)) {
        if (w.count > 0) got[w.cls.leaders] = w.count;
        total += w.count;
      }
      CHECK(got == expected);
      long long space = 1;
      for (int i = 0; i < users; ++i) space *= files;
      CHECK(total == space);
    }
}

TEST_CASE("enumerate_classes fixed iteration order") {
  const auto classes = enumerate_classes(2, 2);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].cls.leaders == std::vector<int>{1});
  CHECK(classes[0].count == 2);
  CHECK(classes[1].cls.leaders == std::vector<int>{1, 2});
  CHECK(classes[1].count == 2);
}

TEST_CASE("single-file library leaves only the all-same class") {
  const auto classes = enumerate_classes(3, 1);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].cls.leaders == std::vector<int>{1});
  CHECK(classes[0].count == 1);
  CHECK(classes[0].probability == doctest::Approx(1.0));
}

TEST_CASE("K=5 N=8 classes sum to 8^5") {
  const auto classes = enumerate_classes(5, 8);
  CHECK(classes.size() == 16);
  long long total = 0;
  for (const auto& w : classes) total += w.count;
  CHECK(total == 32768);
}

TEST_CASE("probabilities sum to one") {
  for (int users = 1; users <= 8; ++users)
    for (int files : {1, 2, 3, 8, 100}) {
      double sum = 0.0;
      for_each_class(users, files, WeightMode::exact,
                     [&](const ClassWeight& w) { sum += w.probability; });
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("log-space weights match exact weights where both exist") {
  for (int users = 1; users <= 6; ++users)
    for (int files : {2, 4}) {
      const auto exact = enumerate_classes(users, files, WeightMode::exact);
      const auto logs = enumerate_classes(users, files, WeightMode::log_space);
      REQUIRE(exact.size() == logs.size());
      for (std::size_t i = 0; i < exact.size(); ++i)
        CHECK(std::abs(exact[i].probability - logs[i].probability) < 1e-12);
    }
}

TEST_CASE("log-space mode carries huge demand spaces") {
  // N^K = 100^12 is far outside 64 bits; probabilities must still sum to 1
  double sum = 0.0;
  for_each_class(12, 100, WeightMode::log_space,
                 [&](const ClassWeight& w) { sum += w.probability; });
  CHECK(std::abs(sum - 1.0) < 1e-9);
}

TEST_CASE("multiplicity depends only on the leader set") {
  // every demand vector in a class maps to the same leaders, so grouping by
  // class and by explicit demand enumeration must agree; re-checked here for
  // a skewed class shape
  const DemandClass cls = class_from_leaders({1, 4}, 5);
  long long count = 0;
  for (const DemandVector& d : oracle::all_demands(5, 3))
    if (leader_set(d).leaders == cls.leaders) ++count;
  CHECK(class_multiplicity(cls, 3) == count);
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(enumerate_classes(31, 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_classes(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_classes(2, 0), std::invalid_argument);
}
