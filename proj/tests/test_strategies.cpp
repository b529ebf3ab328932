#include <algorithm>

#include "doctest.h"
#include "linerdv/strategies.hpp"
#include "test_helpers.hpp"

using namespace linerdv;
using linerdv::testing::rand_in;

namespace {

Scalar sc(long long n, long long d = 1) { return Scalar(Rational(n, d)); }

Configuration cfg(std::initializer_list<Scalar> positions) {
  return Configuration::from_positions(std::vector<Scalar>(positions));
}

Configuration random_rational_cfg(std::mt19937_64& rng, int n, int span = 20) {
  std::vector<Scalar> positions;
  for (int i = 0; i < n; ++i) {
    positions.push_back(Scalar(Rational(rand_in(rng, 0, span * 2), rand_in(rng, 1, 4))));
  }
  return Configuration::from_positions(positions);
}

bool same_plan(const Plan& a, const Plan& b) {
  if (a.all_gather_time != b.all_gather_time) return false;
  if (a.trajectories.size() != b.trajectories.size()) return false;
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    const auto& pa = a.trajectories[i].breakpoints();
    const auto& pb = b.trajectories[i].breakpoints();
    if (pa.size() != pb.size()) return false;
    for (std::size_t k = 0; k < pa.size(); ++k) {
      if (pa[k].t != pb[k].t || pa[k].x != pb[k].x) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("ssi closes gaps in ascending order") {
  // {0,1,3,7}: gaps 1, 2, 4 collapse as phases of durations 1/2, 1, 2.
  const Configuration c = cfg({Scalar(0), Scalar(1), Scalar(3), Scalar(7)});
  const auto phases = ssi_phases(c);
  REQUIRE(phases.size() == 3);
  CHECK(phases[0].duration == sc(1, 2));
  CHECK(phases[1].duration == Scalar(1));
  CHECK(phases[2].duration == Scalar(2));
  CHECK(phases[0].gap == Scalar(1));

  const Plan plan = ssi_plan(c);
  CHECK(plan.all_gather_time == sc(7, 2));
  CHECK(plan.gather_position() == sc(7, 2));
  REQUIRE(plan.events.size() == 3);
  // Event times are the cumulative phase durations.
  Scalar clock(0);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    clock += phases[i].duration;
    CHECK(plan.events[i].time == clock);
  }
}

TEST_CASE("ssi single gap meets at the midpoint") {
  const Plan plan = ssi_plan(cfg({Scalar(0), Scalar(5)}));
  CHECK(plan.all_gather_time == sc(5, 2));
  CHECK(plan.gather_position() == sc(5, 2));
}

TEST_CASE("ssi tightness run: the outliers delay the last merge") {
  const Configuration c = cfg({Scalar(1), Scalar(2), Scalar(3), sc(41, 10)});
  const Plan plan = ssi_plan(c);
  const std::vector<RobotId> survivors = {2, 3};
  // Phases 1/2, 1/2 close the unit gaps, then the 11/10 gap collapses.
  CHECK(gather_time(plan, survivors) == sc(31, 20));
}

TEST_CASE("ssi invariants on random configurations") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 50; ++it) {
    const Configuration c = random_rational_cfg(rng, static_cast<int>(rand_in(rng, 2, 7)));
    const auto phases = ssi_phases(c);
    Scalar total(0);
    for (std::size_t i = 0; i < phases.size(); ++i) {
      total += phases[i].duration;
      if (i > 0) CHECK(phases[i].gap >= phases[i - 1].gap);
    }
    // Total time is half the sum of all gaps, i.e. half the span.
    CHECK(total == c.span() / Scalar(2));
    const Plan plan = ssi_plan(c);
    CHECK(plan.all_gather_time == total);
    CHECK(validate_plan(plan).ok());
    CHECK(same_plan(plan, ssi_plan(c)));  // deterministic
  }
}

TEST_CASE("doubling pair meets within round one") {
  // Even robot: left 1/2 then right 1; odd robot: right 1/2 then left 1.
  const Plan plan = doubling_plan(cfg({Scalar(0), Scalar(1)}));
  CHECK(plan.all_gather_time == sc(3, 2));
  CHECK(plan.gather_position() == sc(1, 2));
}

TEST_CASE("doubling four in a row needs two rounds") {
  const Plan plan = doubling_plan(cfg({Scalar(0), Scalar(1), Scalar(2), Scalar(3)}));
  CHECK(plan.all_gather_time == sc(9, 2));
  CHECK(plan.gather_position() == sc(3, 2));
  // Round one leaves the groups {0,1} and {2,3}.
  const std::vector<RobotId> left = {0, 1}, right = {2, 3};
  CHECK(gather_time(plan, left) == sc(3, 2));
  CHECK(gather_time(plan, right) == sc(3, 2));
  CHECK(validate_plan(plan).ok());
}

TEST_CASE("doubling pair bound on random integer configs") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 25; ++it) {
    const int n = static_cast<int>(rand_in(rng, 2, 6));
    std::vector<Scalar> positions;
    while (static_cast<int>(positions.size()) < n) {
      const Scalar p(rand_in(rng, -20, 20));
      if (std::find(positions.begin(), positions.end(), p) == positions.end()) {
        positions.push_back(p);
      }
    }
    const Configuration c = Configuration::from_positions(positions);
    const Plan plan = doubling_plan(c);
    CHECK(validate_plan(plan).ok());
    for (RobotId a = 0; a < n; ++a) {
      for (RobotId b = a + 1; b < n; ++b) {
        const auto meet = first_meet_time(plan.trajectories[a], plan.trajectories[b]);
        REQUIRE(meet.has_value());
        CHECK(*meet <= Scalar(6) * abs(c.position_of(a) - c.position_of(b)));
      }
    }
  }
}

TEST_CASE("doubling rejects fractional positions") {
  CHECK_THROWS_AS(doubling_plan(cfg({sc(1, 2), Scalar(2)})), PreconditionError);
}

TEST_CASE("doubling accepts duplicate integer positions") {
  const Plan plan = doubling_plan(cfg({Scalar(0), Scalar(0), Scalar(1)}));
  CHECK(validate_plan(plan).ok());
  const std::vector<RobotId> dup = {0, 1};
  CHECK(gather_time(plan, dup) == Scalar(0));
}

TEST_CASE("scaled doubling is the doubling plan in scaled coordinates") {
  const Configuration c = cfg({Scalar(0), sc(1, 2), sc(5, 2)});
  const Plan scaled = scaled_doubling_plan(c);
  const Plan integer_plan = doubling_plan(cfg({Scalar(0), Scalar(1), Scalar(5)}));
  CHECK(scaled.all_gather_time == integer_plan.all_gather_time / Scalar(2));
  for (RobotId id = 0; id < 3; ++id) {
    const auto& got = scaled.trajectories[id].breakpoints();
    const auto& want = integer_plan.trajectories[id].breakpoints();
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(got[k].t == want[k].t / Scalar(2));
      CHECK(got[k].x == want[k].x / Scalar(2));
    }
  }
}

TEST_CASE("scaled doubling with integer input matches doubling exactly") {
  const Configuration c = cfg({Scalar(0), Scalar(1)});
  CHECK(same_plan(scaled_doubling_plan(c), doubling_plan(c)));
}

TEST_CASE("scaled doubling rejects irrational positions") {
  CHECK_THROWS_AS(scaled_doubling_plan(cfg({Scalar(0), phi()})), PreconditionError);
  ScaledDoublingParams params;
  params.epsilon = Scalar(0);
  CHECK_THROWS_AS(scaled_doubling_plan(cfg({Scalar(0), Scalar(1)}), params),
                  PreconditionError);
}

TEST_CASE("mtc three robots: the middle pursues by distance order") {
  const Plan plan = mtc_plan(cfg({Scalar(0), Scalar(1), Scalar(2)}), 1);
  REQUIRE(plan.events.size() == 2);
  CHECK(plan.events[0].time == sc(1, 2));
  CHECK(plan.events[0].position == sc(1, 2));
  CHECK(plan.events[0].robots == std::vector<RobotId>{0, 1});
  CHECK(plan.events[1].time == Scalar(1));
  CHECK(plan.events[1].position == Scalar(1));
  CHECK(plan.events[1].robots == std::vector<RobotId>{0, 1, 2});
  CHECK(plan.all_gather_time == Scalar(1));
  CHECK(validate_plan(plan).ok());
}

TEST_CASE("mtc four robots: center forms at the innermost gap") {
  const Plan plan = mtc_plan(cfg({Scalar(0), Scalar(1), Scalar(2), Scalar(4)}), 1);
  REQUIRE(!plan.events.empty());
  CHECK(plan.events[0].time == sc(1, 2));
  CHECK(plan.events[0].position == sc(3, 2));
  CHECK(plan.events[0].robots == std::vector<RobotId>{1, 2});
  const std::vector<RobotId> with_left = {0, 1, 2};
  CHECK(gather_time(plan, with_left) == Scalar(1));
  CHECK(plan.all_gather_time == Scalar(2));
  CHECK(validate_plan(plan).ok());
}

TEST_CASE("mtc degenerate and inapplicable inputs") {
  const Plan flat = mtc_plan(cfg({Scalar(3), Scalar(3), Scalar(3)}), 1);
  CHECK(flat.all_gather_time == Scalar(0));
  CHECK_THROWS_AS(mtc_plan(cfg({Scalar(0), Scalar(1), Scalar(2)}), 2), PreconditionError);
  CHECK_THROWS_AS(mtc_plan(cfg({Scalar(0), Scalar(1)}), 0), PreconditionError);
}

TEST_CASE("mtc determinism") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 20; ++it) {
    const int n = static_cast<int>(rand_in(rng, 3, 8));
    const Configuration c = random_rational_cfg(rng, n);
    const int f = static_cast<int>(rand_in(rng, 0, (n - 1) / 2));
    const Plan a = mtc_plan(c, f);
    CHECK(same_plan(a, mtc_plan(c, f)));
    CHECK(validate_plan(a).ok());
  }
}

TEST_CASE("three-group split sizes") {
  const PartitionSpec s9 = three_group_partition(9);
  CHECK(s9.k == 0);
  CHECK(s9.size_left == 3);
  CHECK(s9.size_mid == 2);
  CHECK(s9.size_right == 4);

  const PartitionSpec s10 = three_group_partition(10);
  CHECK(s10.k == 1);
  CHECK(s10.size_left == 3);
  CHECK(s10.size_mid == 4);
  CHECK(s10.size_right == 3);

  const PartitionSpec s12 = three_group_partition(12);
  CHECK(s12.k == 1);
  CHECK(s12.size_left == 4);
  CHECK(s12.size_mid == 4);
  CHECK(s12.size_right == 4);

  CHECK_THROWS_AS(three_group_partition(8), PreconditionError);
}

TEST_CASE("three-group partition binds the walker positions") {
  std::vector<Scalar> positions;
  for (int i = 0; i < 9; ++i) positions.push_back(Scalar(i));
  const PartitionSpec spec = three_group_partition(Configuration::from_positions(positions));
  REQUIRE(spec.m_left.has_value());
  REQUIRE(spec.m_right.has_value());
  CHECK(*spec.m_left == Scalar(3));
  CHECK(*spec.m_right == Scalar(4));
}

TEST_CASE("three-group plan gathers and validates") {
  std::vector<Scalar> positions;
  for (int i = 0; i < 9; ++i) positions.push_back(Scalar(i));
  const Configuration c = Configuration::from_positions(positions);
  const Plan plan = three_group_plan(c, 5);
  CHECK(validate_plan(plan).ok());
  CHECK(gather_time(plan, c.all_ids()) == plan.all_gather_time);
  CHECK(same_plan(plan, three_group_plan(c, 5)));

  const Plan flat = three_group_plan(
      Configuration::from_positions(std::vector<Scalar>(9, Scalar(7))), 3);
  CHECK(flat.all_gather_time == Scalar(0));
}

TEST_CASE("three-group preconditions") {
  std::vector<Scalar> eight(8);
  for (int i = 0; i < 8; ++i) eight[i] = Scalar(i);
  CHECK_THROWS_AS(three_group_plan(Configuration::from_positions(eight), 2),
                  PreconditionError);
  std::vector<Scalar> nine(9);
  for (int i = 0; i < 9; ++i) nine[i] = Scalar(i);
  // 3f >= 2(n-1) is out of range: f = 6 with n = 9 gives 18 >= 16.
  CHECK_THROWS_AS(three_group_plan(Configuration::from_positions(nine), 6),
                  PreconditionError);
}

TEST_CASE("three-group plans on random configurations") {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 12; ++it) {
    const int n = static_cast<int>(rand_in(rng, 9, 12));
    const Configuration c = random_rational_cfg(rng, n, 16);
    const Plan plan = three_group_plan(c, 5);
    CHECK(validate_plan(plan).ok());
    CHECK(gather_time(plan, c.all_ids()) == plan.all_gather_time);
  }
}

TEST_CASE("scaled doubling keeps the pairwise meeting bound") {
  std::mt19937_64 rng(73);
  for (int it = 0; it < 15; ++it) {
    const int n = static_cast<int>(rand_in(rng, 2, 6));
    const Configuration c = random_rational_cfg(rng, n, 10);
    const Plan plan = scaled_doubling_plan(c);
    for (RobotId a = 0; a < n; ++a) {
      for (RobotId b = a + 1; b < n; ++b) {
        const auto meet = first_meet_time(plan.trajectories[a], plan.trajectories[b]);
        REQUIRE(meet.has_value());
        CHECK(*meet <= Scalar(6) * abs(c.position_of(a) - c.position_of(b)));
      }
    }
  }
}

TEST_CASE("strategy selector strings") {
  CHECK(parse_strategy("ssi") == StrategyKind::ssi);
  CHECK(parse_strategy("three_group") == StrategyKind::three_group);
  CHECK(strategy_name(StrategyKind::scaled_doubling) == "scaled_doubling");
  CHECK_THROWS_AS(parse_strategy("walk"), ConfigError);
}
