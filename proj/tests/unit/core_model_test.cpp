#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "formula_oracle.hpp"
#include "noma_mec/core_model.hpp"
#include "noma_mec/errors.hpp"

using namespace nomamec;

namespace {

ChannelState two_ud_channel() {
  ChannelState ch(2, 1, 1, 1, 1e-12, 1.0, 1.0);
  ch.set_access_gain(0, 0, 0, 1e-9);
  ch.set_access_gain(1, 0, 0, 1e-10);
  return ch;
}

AccessPoint ap_with(double q_tx, double q_idle) {
  AccessPoint ap;
  ap.q_tx_w = q_tx;
  ap.q_idle_w = q_idle;
  return ap;
}

}  // namespace

TEST_SUITE("core_model") {
  TEST_CASE("single UD SINR is a direct ratio") {
    ChannelState ch(1, 1, 1, 1, 1e-12, 1.0, 1.0);
    ch.set_access_gain(0, 0, 0, 1e-10);
    RrbSlice slice{0, 0, {{0, 0.1}}};
    CHECK(sinr(slice, 0, ch) == doctest::Approx(10.0).epsilon(1e-12));
  }

  TEST_CASE("two UD SIC: strong UD sees the weak one, weak UD sees noise") {
    const auto ch = two_ud_channel();
    RrbSlice slice{0, 0, {{0, 0.1}, {1, 0.1}}};
    CHECK(sinr(slice, 0, ch) == doctest::Approx(1e-10 / (1e-11 + 1e-12)).epsilon(1e-12));
    CHECK(sinr(slice, 0, ch) == doctest::Approx(9.0909).epsilon(1e-4));
    CHECK(sinr(slice, 1, ch) == doctest::Approx(10.0).epsilon(1e-12));
  }

  TEST_CASE("zero power gives zero SINR") {
    const auto ch = two_ud_channel();
    RrbSlice slice{0, 0, {{0, 0.0}, {1, 0.1}}};
    CHECK(sinr(slice, 0, ch) == 0.0);
  }

  TEST_CASE("equal gains decode the lower id first") {
    ChannelState ch(2, 1, 1, 1, 1e-12, 1.0, 1.0);
    ch.set_access_gain(0, 0, 0, 1e-10);
    ch.set_access_gain(1, 0, 0, 1e-10);
    RrbSlice slice{0, 0, {{0, 0.1}, {1, 0.1}}};
    CHECK(sinr(slice, 1, ch) == doctest::Approx(10.0));
    CHECK(sinr(slice, 0, ch) < sinr(slice, 1, ch));
  }

  TEST_CASE("unknown UD or RRB is an invalid assignment") {
    const auto ch = two_ud_channel();
    RrbSlice slice{0, 0, {{0, 0.1}}};
    CHECK_THROWS_AS(sinr(slice, 1, ch), InvalidAssignment);
    RrbSlice bad_rrb{0, 5, {{0, 0.1}}};
    CHECK_THROWS_AS(sinr(bad_rrb, 0, ch), InvalidAssignment);
    RrbSlice bad_ud{0, 0, {{7, 0.1}}};
    CHECK_THROWS_AS(sinr(bad_ud, 7, ch), InvalidAssignment);
  }

  TEST_CASE("SINR is monotone in own power and antitone in weaker interferer power") {
    const auto ch = two_ud_channel();
    double prev = -1.0;
    for (double p = 0.0; p <= 0.2; p += 0.02) {
      RrbSlice slice{0, 0, {{0, p}, {1, 0.1}}};
      const double s = sinr(slice, 0, ch);
      CHECK(s >= prev);
      prev = s;
    }
    prev = std::numeric_limits<double>::infinity();
    for (double p = 0.0; p <= 0.2; p += 0.02) {
      RrbSlice slice{0, 0, {{0, 0.1}, {1, p}}};
      const double s = sinr(slice, 0, ch);
      CHECK(s <= prev);
      prev = s;
    }
  }

  TEST_CASE("uplink rate") {
    ChannelState ch(1, 1, 1, 1, 1.0, 1e7, 1.0);
    CHECK(uplink_rate(0.0, ch) == 0.0);
    CHECK(uplink_rate(1.0, ch) == doctest::Approx(1e7));
    ch.rrb_bandwidth_hz = 1.0;
    CHECK(uplink_rate(10.0, ch) == doctest::Approx(3.4594).epsilon(1e-4));
  }

  TEST_CASE("backhaul rate") {
    ChannelState ch(1, 1, 1, 1, 1.0, 1.0, 1.0);
    MecServer mec;
    ch.set_backhaul_gain(0, 0, 1.0);
    CHECK(backhaul_rate(ap_with(1.0, 0.1), mec, ch) == doctest::Approx(1.0));
    CHECK(backhaul_rate(ap_with(3.0, 0.3), mec, ch) == doctest::Approx(2.0));

    ChannelState big(1, 1, 1, 1, 3.98e-14, 1e7, 1e7);
    big.set_backhaul_gain(0, 0, 1e-13);
    CHECK(backhaul_rate(ap_with(0.55, 0.055), mec, big) == doctest::Approx(1.253e7).epsilon(1e-3));

    MecServer missing;
    missing.id = 3;
    CHECK_THROWS_AS(backhaul_rate(ap_with(1.0, 0.1), missing, ch), InvalidTopology);
  }

  TEST_CASE("local cost") {
    CostWeights w;
    w.alpha_cpu = 1e-27;
    std::vector<TaskUpload> one{{{500.0, 100.0, 0.01}, 1e6}};
    auto c = local_cost(one, 5e7, w);
    CHECK(c.delay_s == doctest::Approx(1.5e-3).epsilon(1e-12));
    CHECK(c.energy_j == doctest::Approx(1.25e-7).epsilon(1e-12));

    std::vector<TaskUpload> two{one[0], one[0]};
    c = local_cost(two, 5e7, w);
    CHECK(c.delay_s == doctest::Approx(2.5e-3).epsilon(1e-12));
    CHECK(c.energy_j == doctest::Approx(2.5e-7).epsilon(1e-12));

    c = local_cost({}, 5e7, w);
    CHECK(c.delay_s == 0.0);
    CHECK(c.energy_j == 0.0);

    std::vector<TaskUpload> dead{{{500.0, 100.0, 0.01}, 0.0}};
    CHECK_THROWS_AS(local_cost(dead, 5e7, w), InfeasibleUpload);
  }

  TEST_CASE("MEC cost") {
    MecServer mec;
    mec.f_mec_cps = 3e9;
    const auto ap = ap_with(1.0, 0.1);
    std::vector<TaskUpload> one{{{500.0, 100.0, 0.01}, 1e6}};
    auto c = mec_cost(one, ap, mec, 1e6);
    CHECK(c.delay_s == doctest::Approx(5e-4 + 5e-4 + 5e4 / 3e9).epsilon(1e-12));
    CHECK(c.delay_s == doctest::Approx(1.0167e-3).epsilon(1e-4));
    CHECK(c.energy_j == doctest::Approx(5.0167e-4).epsilon(1e-4));

    c = mec_cost({}, ap, mec, 1e6);
    CHECK(c.delay_s == 0.0);
    CHECK(c.energy_j == 0.0);

    // A very fast server leaves only the upload and relay terms.
    mec.f_mec_cps = 1e300;
    c = mec_cost(one, ap, mec, 1e6);
    CHECK(c.delay_s == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(c.energy_j == doctest::Approx(5e-4).epsilon(1e-12));

    ChannelState ch(1, 1, 1, 1, 1.0, 1.0, 1.0);
    MecServer far;
    far.id = 2;
    far.f_mec_cps = 3e9;
    CHECK_THROWS_AS(mec_cost(one, ap, far, ch), InvalidTopology);
  }

  TEST_CASE("weighted cost and composition") {
    CostWeights w;
    CHECK(weighted_cost(2.0, 4.0, w) == doctest::Approx(3.0));
    const auto total = oracle::system({{1.5e-3, 1.25e-7}, {1.0167e-3, 5.0167e-4}});
    CHECK(total.delay == doctest::Approx(1.5e-3));
    CHECK(total.energy == doctest::Approx(5.0180e-4).epsilon(1e-4));
  }

  TEST_CASE("access gain lookup errors") {
    ChannelState ch(1, 1, 1, 1, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(ch.access_gain(1, 0, 0), InvalidTopology);
    CHECK_THROWS_AS(ch.backhaul_gain(0, 1), InvalidTopology);
  }
}
