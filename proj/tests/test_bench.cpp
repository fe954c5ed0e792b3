#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "past/bench.hpp"
#include "past/ingest.hpp"

using namespace past;

TEST_CASE("speedup") {
  CHECK(speedup(2028, 136) == doctest::Approx(14.91).epsilon(0.001));
  CHECK(speedup(92, 24) == doctest::Approx(3.833).epsilon(0.001));
  CHECK(speedup(7.5, 7.5) == 1.0);
  for (double a : {0.001, 3.0, 1e6}) {
    CHECK(speedup(a * 92, a * 24) == doctest::Approx(speedup(92, 24)));
  }
  CHECK_THROWS_AS(speedup(0, 1), Error);
  CHECK_THROWS_AS(speedup(1, -2), Error);
  CHECK_THROWS_AS(speedup(std::nan(""), 1), Error);
}

TEST_CASE("time_build") {
  SUBCASE("empty input still takes positive time") {
    BenchRow row = time_build(BuilderKind::Past, Sequence(""), 5, 1);
    CHECK(row.status == RunStatus::Ok);
    CHECK(row.seconds > 0.0);
    CHECK(row.k == std::optional<std::size_t>(5));
  }
  SUBCASE("forced timeout") {
    Sequence seq(uniform_text(1 << 20, 4, 1));
    TimingOptions opts;
    opts.timeout = std::chrono::duration<double>(1e-3);
    BenchRow row = time_build(BuilderKind::StBased, seq, std::nullopt, 1, opts);
    CHECK(row.status == RunStatus::Timeout);
    std::vector<BenchRow> rows{row};
    CHECK(format_bench_csv(rows).find(",1,n/a\n") != std::string::npos);
  }
  SUBCASE("configuration errors") {
    Sequence seq("acgt");
    CHECK_THROWS_AS(time_build(BuilderKind::StBased, seq, 5, 1), Error);
    CHECK_THROWS_AS(time_build(BuilderKind::Past, seq, std::nullopt, 1), Error);
    TimingOptions none;
    none.repetitions = 0;
    CHECK_THROWS_AS(time_build(BuilderKind::Past, seq, 2, 1, none), Error);
  }
  SUBCASE("timed region is the builder call only") {
    Sequence seq(uniform_text(200000, 4, 2));
    std::vector<double> regions;
    TimingOptions opts;
    opts.repetitions = 3;
    opts.probe = [&](auto start, auto stop) {
      regions.push_back(std::chrono::duration<double>(stop - start).count());
    };
    BenchRow row = time_build(BuilderKind::Past, seq, 5, 2, opts);
    REQUIRE(regions.size() == 3);
    CHECK(row.seconds == *std::min_element(regions.begin(), regions.end()));
  }
}

TEST_CASE("run_suite row and speedup counts") {
  std::vector<BenchInput> inputs{{Sequence(uniform_text(4000, 4, 1)), 5u << 20},
                                 {Sequence(uniform_text(8000, 4, 2)), 10u << 20}};
  SuiteConfig cfg;
  cfg.ks = {5};
  cfg.workers = {1, 8};
  cfg.baseline = true;
  SuiteResult r = run_suite(inputs, cfg);
  CHECK(r.rows.size() == 6);
  REQUIRE(r.speedups.size() == 4);
  std::size_t cross = 0, self = 0;
  for (const SpeedupPoint& p : r.speedups) {
    CHECK(p.ratio > 0.0);
    CHECK(p.workers == 8);
    (p.kind == SpeedupKind::BaselineOverPast ? cross : self)++;
  }
  CHECK(cross == 2);
  CHECK(self == 2);
  CHECK(speedup_kind_name(SpeedupKind::BaselineOverPast) !=
        speedup_kind_name(SpeedupKind::SelfRelative));

  SuiteConfig lone;
  lone.ks = {5};
  lone.workers = {1};
  SuiteResult one = run_suite({inputs[0]}, lone);
  CHECK(one.rows.size() == 1);
  CHECK(one.speedups.empty());

  CHECK_THROWS_AS(run_suite({}, lone), Error);
}

TEST_CASE("construction-time table grid shape") {
  // Ten sizes, three ks, baseline on: the grid has sizes x ks PaST rows plus
  // one st_based row per size. Tiny stand-in texts keep this fast.
  std::vector<BenchInput> inputs;
  for (int i = 1; i <= 10; ++i) {
    inputs.push_back({Sequence(uniform_text(300 * i, 4, i)), static_cast<std::uint64_t>(5 * i) << 20});
  }
  SuiteConfig cfg;
  cfg.ks = {5, 10, 15};
  cfg.workers = {16};
  cfg.baseline = true;
  SuiteResult r = run_suite(inputs, cfg);
  std::size_t past_rows = 0, base_rows = 0;
  for (const BenchRow& row : r.rows) {
    (row.builder == BuilderKind::Past ? past_rows : base_rows)++;
  }
  CHECK(past_rows == 30);
  CHECK(base_rows == 10);

  // With a forced timeout the baseline cells print "n/a" and yield no points.
  cfg.timing.timeout = std::chrono::duration<double>(1e-9);
  SuiteResult timed = run_suite({inputs.back()}, cfg);
  CHECK(timed.rows.front().status == RunStatus::Timeout);
  CHECK(format_bench_csv(timed.rows).find(",n/a") != std::string::npos);
}

TEST_CASE("synthetic generators") {
  CHECK(synthetic_symbols(4) == "ACGT");
  CHECK(synthetic_symbols(20).size() == 20);
  CHECK(uniform_text(1000, 4, 3) == uniform_text(1000, 4, 3));
  CHECK(uniform_text(1000, 20, 3).find_first_not_of(synthetic_symbols(20)) == std::string::npos);

  PlantedText planted = plant_microsatellites(100000, 20, 2, 6, 3, 17);
  CHECK(planted.text.size() == 100000);
  REQUIRE(planted.log.size() == 20);
  for (const PlantedRepeat& rep : planted.log) {
    CHECK(rep.unit.size() >= 2);
    CHECK(rep.unit.size() <= 6);
    CHECK(rep.copies >= 3);
    for (Pos p : rep.copy_starts()) CHECK(planted.text.compare(p, rep.unit.size(), rep.unit) == 0);
  }
  CHECK_THROWS_AS(plant_microsatellites(50, 20, 2, 6, 3, 1), Error);
}
