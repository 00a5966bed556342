#include <doctest.h>

#include <cmath>

#include "fair/radio.hpp"

using namespace fair;

TEST_CASE("path loss formula") {
    const SimConfig cfg = default_config();
    // 20*log10(2400) + 60*log10(d) - 24
    CHECK(path_loss_db(10.0, cfg) == doctest::Approx(103.60422483423211).epsilon(1e-12));
    CHECK(path_loss_db(1.0, cfg) == doctest::Approx(43.60422483423211).epsilon(1e-12));
    CHECK(path_loss_db(20.0, cfg) - path_loss_db(10.0, cfg) ==
          doctest::Approx(60.0 * std::log10(2.0)).epsilon(1e-12));
    CHECK(path_loss_db(50.0, cfg) > path_loss_db(49.0, cfg));
    CHECK_THROWS_AS(path_loss_db(0.0, cfg), NonPositiveDistance);
    CHECK_THROWS_AS(path_loss_db(-3.0, cfg), NonPositiveDistance);
}

TEST_CASE("snr link budget") {
    const SimConfig cfg = default_config(); // tx 20 dBm, noise -90 dBm
    CHECK(snr_db(103.604, cfg) == doctest::Approx(6.396).epsilon(1e-12));
    CHECK(snr_db(cfg.tx_power_dbm - cfg.noise_floor_dbm, cfg) == doctest::Approx(0.0));
    CHECK(snr_db(100.0, cfg) - snr_db(103.0, cfg) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rate lookup against the 802.11n table") {
    const RateTable table = RateTable::default_80211n();
    REQUIRE(table.valid());
    CHECK(rate_lookup(15.0, table) == 173e6);
    CHECK(rate_lookup(25.0, table) == 289e6);
    CHECK(rate_lookup(1.9, table) == 0.0);
    CHECK(rate_lookup(6.396, table) == 58e6);

    // Exhaustive: at and just around every threshold.
    const double rates[] = {29e6, 58e6, 87e6, 116e6, 173e6, 231e6, 260e6, 289e6};
    for (std::size_t i = 0; i < table.steps.size(); ++i) {
        const double snr = table.steps[i].min_snr_db;
        CHECK(rate_lookup(snr, table) == rates[i]);
        CHECK(rate_lookup(snr + 1e-9, table) == rates[i]);
        CHECK(rate_lookup(snr - 1e-9, table) == (i == 0 ? 0.0 : rates[i - 1]));
    }

    // Monotone step function of snr.
    double prev = -1.0;
    for (double snr = -5.0; snr < 30.0; snr += 0.25) {
        const double r = rate_lookup(snr, table);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("frame latency") {
    const double r173 = 173e6;
    CHECK(frame_latency(Resolution{640, 480}, 8.0, r173) ==
          doctest::Approx(0.01420578034682081).epsilon(1e-12));
    CHECK(frame_latency(Resolution{128, 128}, 8.0, r173) ==
          doctest::Approx(0.0007576416184971098).epsilon(1e-12));
    CHECK(frame_latency(Resolution{640, 480}, 8.0, 2 * r173) ==
          doctest::Approx(0.01420578034682081 / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(frame_latency(Resolution{640, 480}, 8.0, 0.0), LinkDown);

    // latency * rate recovers the bit volume
    for (double rate : {29e6, 116e6, 289e6}) {
        const double bits = Resolution{320, 480}.bits(8.0);
        CHECK(std::abs(frame_latency(bits, rate) * rate - bits) <= 1e-12 * bits);
    }
}

TEST_CASE("distance to rate chain is nonincreasing") {
    const SimConfig cfg = default_config();
    const RateTable table = RateTable::default_80211n();
    double prev = 1e18;
    for (double d = 1.0; d < 40.0; d += 0.25) {
        const LinkState link = link_state(d, cfg, table);
        CHECK(link.rate_bps <= prev);
        CHECK((link.rate_bps > 0) == link.connected);
        prev = link.rate_bps;
    }
    // The defaults keep the whole table span inside ~12 m.
    CHECK(link_state(5.0, cfg, table).rate_bps == 260e6);
    CHECK(link_state(10.0, cfg, table).rate_bps == 58e6);
    CHECK_FALSE(link_state(12.0, cfg, table).connected);
}
