#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "noma_mec/errors.hpp"
#include "noma_mec/scenario.hpp"

using namespace nomamec;

TEST_SUITE("scenario") {
  TEST_CASE("empty document yields defaults") {
    const auto cfg = load_config("");
    const ScenarioConfig d;
    CHECK(cfg.scenario.n_uds == 24);
    CHECK(cfg.scenario.n_aps == 9);
    CHECK(cfg.scenario.n_mecs == 4);
    CHECK(cfg.scenario.rrbs_per_ap == 3);
    CHECK(cfg.scenario.cell_radius_m == 1500.0);
    CHECK(cfg.scenario.task_size_range_bits == d.task_size_range_bits);
    CHECK(cfg.scenario.density == 100.0);
    CHECK(cfg.scenario.deadline_s == 0.01);
    CHECK(cfg.scenario.f_mec_cps == 3e9);
    CHECK(cfg.scenario.f_loc_max_cps == 5e7);
    CHECK(cfg.scenario.alpha == 1e-27);
    CHECK(cfg.scenario.rate_threshold_bps == 5e4);
    CHECK(cfg.scenario.bandwidth_hz == 1e7);
    CHECK(cfg.scenario.noise_dbm_hz == -174.0);
    CHECK(cfg.scenario.p_max_dbm_hz == -42.60);
    CHECK(load_config("{}").scenario.n_uds == 24);
  }

  TEST_CASE("range and field errors name the field") {
    try {
      load_config(R"({"n_uds": 0})");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "n_uds");
    }
    try {
      load_config(R"({"no_such_key": 1})");
      FAIL("expected a config error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "no_such_key");
    }
    CHECK_THROWS_AS(load_config(R"({"deadline_s": -1})"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"task_size_range_bits": [600, 400]})"), ConfigError);
    CHECK_THROWS_AS(load_config("not json"), ConfigError);
    CHECK_THROWS_AS(load_config(R"({"mwis_ordering": "sideways"})"), ConfigError);
  }

  TEST_CASE("overrides keep the remaining defaults") {
    const auto cfg = load_config(R"({"deadline_s": 0.02, "mwis_ordering": "modified"})");
    CHECK(cfg.scenario.deadline_s == 0.02);
    CHECK(cfg.scenario.n_uds == 24);
    CHECK(cfg.solver.mwis_ordering == MwisOrdering::Modified);
  }

  TEST_CASE("path loss") {
    CHECK(access_path_loss_db(1000.0) == doctest::Approx(128.1));
    CHECK(access_path_loss_db(100.0) == doctest::Approx(90.5));
    CHECK(backhaul_path_loss_db(1000.0) == doctest::Approx(148.0));
  }

  TEST_CASE("power density conversion") {
    CHECK(dbm_per_hz_to_watts(-174.0, 1e7) == doctest::Approx(3.98e-14).epsilon(1e-3));
    CHECK(dbm_per_hz_to_watts(-42.60, 1e7) == doctest::Approx(0.55).epsilon(1e-2));
  }

  TEST_CASE("generation is deterministic and covers every placed UD") {
    const auto cfg = fixtures::small_config(30, 17);
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    CHECK(a.channel == b.channel);
    CHECK(a.coverage == b.coverage);
    REQUIRE(a.devices.size() == 30);
    for (std::size_t n = 0; n < a.devices.size(); ++n) {
      CHECK(a.devices[n].position.x == b.devices[n].position.x);
      CHECK(a.devices[n].task.size_bits == b.devices[n].task.size_bits);
      CHECK(a.devices[n].task.size_bits >= 400.0);
      CHECK(a.devices[n].task.size_bits <= 600.0);
    }
    std::size_t covered = 0;
    for (std::size_t n = 0; n < a.n_uds(); ++n) {
      bool any = false;
      for (std::size_t m = 0; m < a.n_aps(); ++m) any = any || a.covers(m, n);
      covered += any;
    }
    CHECK(covered + a.unservable.size() == a.n_uds());
    CHECK(a.aps.size() == 9);
    CHECK(a.mecs.size() == 4);
  }

  TEST_CASE("different seeds give different placements") {
    const auto a = generate(fixtures::small_config(10, 1));
    const auto b = generate(fixtures::small_config(10, 2));
    CHECK(a.devices[0].position.x != b.devices[0].position.x);
  }

  TEST_CASE("channel realization: determinism, distinct trials, positive gains") {
    const auto sc = generate(fixtures::small_config(12, 5));
    const auto a = realize_channels(sc, 99);
    const auto b = realize_channels(sc, 99);
    const auto c = realize_channels(sc, 100);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    for (std::size_t n = 0; n < sc.n_uds(); ++n)
      for (std::size_t m = 0; m < sc.n_aps(); ++m)
        for (std::size_t z = 0; z < 3; ++z) CHECK(a.access_gain(n, m, z) > 0.0);
  }

  TEST_CASE("fading power has unit mean") {
    auto cfg = fixtures::small_config(1000, 3);
    cfg.ap_coverage_m = 1e6;
    const auto sc = generate(cfg);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::uint64_t trial = 0; trial < 4; ++trial) {
      const auto ch = realize_channels(sc, 1000 + trial);
      for (std::size_t n = 0; n < sc.n_uds(); ++n)
        for (std::size_t m = 0; m < sc.n_aps(); ++m)
          for (std::size_t z = 0; z < ch.n_rrbs(); ++z) {
            sum += ch.access_gain(n, m, z) / sc.large_scale_access[n * sc.n_aps() + m];
            ++count;
          }
    }
    CHECK(count >= 100000);
    CHECK(sum / static_cast<double>(count) == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("default layouts") {
    const auto aps = default_ap_positions(9, 1500.0);
    REQUIRE(aps.size() == 9);
    CHECK(aps[0].x == 0.0);
    CHECK(aps[0].y == 0.0);
    for (std::size_t i = 1; i < aps.size(); ++i) {
      CHECK(std::hypot(aps[i].x, aps[i].y) == doctest::Approx(750.0));
    }
    const auto one = default_mec_positions(1, 1500.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].x == 0.0);
  }

  TEST_CASE("splitmix64 is a fixed mixing function") {
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(1) != splitmix64(2));
  }
}
