#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cachepower/model.hpp"
#include "oracle.hpp"

using namespace cachepower;

TEST_CASE("validate_config accepts the worked channel profile") {
  SystemConfig c;
  c.users = 5;
  c.files = 8;
  c.rate = 1.0;
  c.cache = 0.0;
  c.gains = oracle::worked_gains(5);
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("validate_config accepts the minimal system") {
  SystemConfig c;
  c.users = 1;
  c.files = 1;
  c.rate = 1.0;
  c.cache = 0.0;
  c.gains = {1.0};
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("validate_config rejects descending gains") {
  SystemConfig c;
  c.users = 2;
  c.files = 2;
  c.rate = 1.0;
  c.cache = 0.0;
  c.gains = {2.0, 1.0};
  CHECK_THROWS_WITH_AS(validate_config(c), "gains not non-decreasing", std::invalid_argument);
}

TEST_CASE("validate_config names the offending field") {
  SystemConfig good;
  good.users = 2;
  good.files = 3;
  good.rate = 1.0;
  good.cache = 1.0;
  good.gains = {1.0, 2.0};
  CHECK_NOTHROW(validate_config(good));

  auto c = good;
  c.users = 0;
  c.gains = {};
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);

  c = good;
  c.rate = 0.0;
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);

  c = good;
  c.cache = 3.5;  // M > N
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);

  c = good;
  c.cache = -0.1;
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);

  c = good;
  c.gains = {1.0};  // wrong length
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);

  c = good;
  c.gains = {0.0, 1.0};
  CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
}

TEST_CASE("gain ties are allowed, index order breaks them") {
  SystemConfig c;
  c.users = 3;
  c.files = 2;
  c.rate = 1.0;
  c.cache = 0.0;
  c.gains = {1.0, 1.0, 2.0};
  CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("normalized cache snaps float noise to integers") {
  CHECK(snap_integer(2.0000000001) == 2.0);
  CHECK(snap_integer(1.9999999999) == 2.0);
  CHECK(snap_integer(2.0001) == 2.0001);

  // M = 0.3, K = 10, N = 3 gives t = 1 up to representation noise
  SystemConfig c;
  c.users = 10;
  c.files = 3;
  c.rate = 1.0;
  c.cache = 0.3;
  c.gains = oracle::synthetic_gains(10);
  CHECK(validate_config(c).normalized_cache() == 1.0);
}

TEST_CASE("leader_set on the worked example") {
  const DemandClass cls = leader_set({{1, 2, 1, 1, 3}});
  CHECK(cls.leaders == std::vector<int>{1, 2, 5});
  CHECK(cls.distinct() == 3);
  CHECK(cls.better_leaders == std::vector<int>{2, 1, 1, 1, 0});
  CHECK(cls.leader_mask() == 0b10011u);
}

TEST_CASE("leader_set with identical demands") {
  const DemandClass cls = leader_set({{7, 7, 7}});
  CHECK(cls.leaders == std::vector<int>{1});
  CHECK(cls.better_leaders == std::vector<int>{0, 0, 0});
}

TEST_CASE("leader_set with all-distinct demands") {
  const DemandClass cls = leader_set({{3, 1, 2}});
  CHECK(cls.leaders == std::vector<int>{1, 2, 3});
  CHECK(cls.better_leaders == std::vector<int>{2, 1, 0});
}

TEST_CASE("leader_set properties over every small demand vector") {
  for (int users = 1; users <= 5; ++users)
    for (int files = 1; files <= 4; ++files)
      for (const DemandVector& d : oracle::all_demands(users, files)) {
        const DemandClass cls = leader_set(d);
        REQUIRE(!cls.leaders.empty());
        CHECK(cls.leaders.front() == 1);
        CHECK(cls.distinct() <= std::min(users, files));

        for (int k = 1; k <= users; ++k) {
          int earlier_same = 0;
          for (int m = 1; m < k; ++m)
            if (d.demands[m - 1] == d.demands[k - 1] && cls.is_leader(m)) ++earlier_same;
          if (cls.is_leader(k)) {
            // no earlier user shares the demand at all
            for (int m = 1; m < k; ++m) CHECK(d.demands[m - 1] != d.demands[k - 1]);
          } else {
            CHECK(earlier_same == 1);
          }

          int above = 0;
          for (int i : cls.leaders)
            if (i > k) ++above;
          CHECK(cls.better_leaders[k - 1] == above);
        }
        // non-increasing in k by at most one per step
        for (int k = 1; k < users; ++k) {
          const int step = cls.better_leaders[k - 1] - cls.better_leaders[k];
          CHECK(step >= 0);
          CHECK(step <= 1);
        }
        CHECK(cls.better_leaders[users - 1] == 0);
      }
}

TEST_CASE("class_from_leaders round-trips leader_set") {
  for (int files = 1; files <= 3; ++files)
    for (const DemandVector& d : oracle::all_demands(4, files)) {
      const DemandClass a = leader_set(d);
      const DemandClass b = class_from_leaders(a.leaders, 4);
      CHECK(a.leaders == b.leaders);
      CHECK(a.better_leaders == b.better_leaders);
    }
}

TEST_CASE("class_from_leaders rejects malformed sets") {
  CHECK_THROWS_AS(class_from_leaders({2}, 3), std::invalid_argument);
  CHECK_THROWS_AS(class_from_leaders({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(class_from_leaders({1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(class_from_leaders({1, 4}, 3), std::invalid_argument);
}

TEST_CASE("worst_case_class takes the worst min(N,K) users") {
  const SystemConfig c = oracle::make_config(5, 3, 1.0, 0.0, oracle::synthetic_gains(5));
  CHECK(worst_case_class(c).leaders == std::vector<int>{1, 2, 3});
  const SystemConfig c2 = oracle::make_config(3, 8, 1.0, 0.0, oracle::synthetic_gains(3));
  CHECK(worst_case_class(c2).leaders == std::vector<int>{1, 2, 3});
}

TEST_CASE("validate_demand checks range and length") {
  const SystemConfig c = oracle::make_config(3, 2, 1.0, 0.0, oracle::synthetic_gains(3));
  CHECK_NOTHROW(validate_demand({{1, 2, 1}}, c));
  CHECK_THROWS_AS(validate_demand({{1, 2}}, c), std::invalid_argument);
  CHECK_THROWS_AS(validate_demand({{1, 3, 1}}, c), std::invalid_argument);
  CHECK_THROWS_AS(validate_demand({{0, 1, 1}}, c), std::invalid_argument);
}
