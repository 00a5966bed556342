#include <doctest.h>

#include <cmath>

#include "fair/energy.hpp"
#include "fair/engine.hpp"
#include "fair/trajectory.hpp"

using namespace fair;

TEST_CASE("promotion and tail energy from the measured phases") {
    const EnergyParams params;
    CHECK(params.promotion_energy() == doctest::Approx(0.06698).epsilon(1e-12));
    CHECK(params.tail_energy() == doctest::Approx(0.3381).epsilon(1e-12));
}

TEST_CASE("transmit energy") {
    const EnergyParams params;
    const double bits640 = Resolution{640, 480}.bits(8.0);

    // P_tr(173 Mbps) = 0.01821*173 + 0.7368 = 3.88713 W
    CHECK(params.transmit_power_w(173e6) == doctest::Approx(3.88713).epsilon(1e-12));

    const double eu_tr = transmit_energy(bits640, 173e6, params);
    CHECK(eu_tr == doctest::Approx(0.4602997149595376).epsilon(1e-12));
    CHECK(eu_tr == doctest::Approx(0.46030).epsilon(1e-4));

    // Zero-size frame leaves only promotion + tail.
    CHECK(transmit_energy(0.0, 173e6, params) ==
          doctest::Approx(0.40508).epsilon(1e-12));

    CHECK(transmit_energy(bits640, 173e6, params) >= params.promotion_energy() +
                                                         params.tail_energy());
    CHECK_THROWS_AS(transmit_energy(bits640, 0.0, params), LinkDown);
}

TEST_CASE("camera energy cubic") {
    const EnergyParams params;
    CHECK(camera_energy(307200, params) == doctest::Approx(1.53084721516544).epsilon(1e-12));
    CHECK(camera_energy(307200, params) == doctest::Approx(1.53088).epsilon(1e-4));
    CHECK(camera_energy(16384, params) == doctest::Approx(0.6477104526167192).epsilon(1e-12));
    CHECK(camera_energy(0, params) == doctest::Approx(0.6068).epsilon(1e-12));

    // Strictly increasing across the configured ladder.
    const auto ladder = default_resolution_ladder();
    for (std::size_t i = 1; i < ladder.size(); ++i)
        CHECK(camera_energy(ladder[i], params) > camera_energy(ladder[i - 1], params));
}

TEST_CASE("offload frame energy composes camera and transmission") {
    const EnergyParams params;
    const Resolution max{640, 480}, min{128, 128};
    const double eu = offload_frame_energy(max, 8.0, 173e6, params);
    CHECK(eu == doctest::Approx(1.9911469301249776).epsilon(1e-12));
    CHECK(eu > offload_frame_energy(min, 8.0, 173e6, params));

    // Higher rate shrinks the transmission part only.
    const double eu_fast = offload_frame_energy(max, 8.0, 289e6, params);
    CHECK(eu_fast < eu);
    CHECK(eu - eu_fast ==
          doctest::Approx(transmit_energy(max, 8.0, 173e6, params) -
                          transmit_energy(max, 8.0, 289e6, params)).epsilon(1e-12));
}

TEST_CASE("download frame energy") {
    const EnergyParams params; // p_rev = 1 W
    const Resolution max{640, 480};
    CHECK(download_frame_energy(max, 8.0, 173e6, params) ==
          doctest::Approx(0.01420578034682081).epsilon(1e-12));

    EnergyParams doubled = params;
    doubled.p_rev_w = 2.0;
    CHECK(download_frame_energy(max, 8.0, 173e6, doubled) ==
          doctest::Approx(2 * 0.01420578034682081).epsilon(1e-12));
    CHECK_THROWS_AS(download_frame_energy(max, 8.0, 0.0, params), LinkDown);
}

TEST_CASE("burst energy amortizes promotion and tail") {
    const EnergyParams params;
    const double bits = Resolution{640, 480}.bits(8.0);
    const double single = burst_transmit_energy(bits, 173e6, 1, params);
    CHECK(single == doctest::Approx(transmit_energy(bits, 173e6, params)).epsilon(1e-12));
    const double of_three = burst_transmit_energy(bits, 173e6, 3, params);
    CHECK(3 * of_three == doctest::Approx(3 * single - 2 * (params.promotion_energy() +
                                                            params.tail_energy()))
                              .epsilon(1e-9));
}

TEST_CASE("lifetime energy windows are additive") {
    // One static vehicle offloading for 2 s; windows partition the run.
    auto scenario = std::make_shared<Scenario>(
        synthesize(SynthPattern::constant_speed_ring, 1, 0, 2.0, 5));
    RunSpec spec;
    spec.scenario = scenario;
    spec.algorithm = Algorithm::fair;
    const MetricsLedger ledger = run(spec);

    const double whole = lifetime_energy(ledger, 0.0, 2.0);
    CHECK(whole > 0.0);
    CHECK(lifetime_energy(ledger, 0.0, 1.0) + lifetime_energy(ledger, 1.0, 2.0) ==
          doctest::Approx(whole).epsilon(1e-12));
    CHECK(lifetime_energy(ledger, 5.0, 6.0) == 0.0);
    CHECK(whole == doctest::Approx(ledger.aggregates.lifetime_energy_j).epsilon(1e-12));
}

TEST_CASE("a single offloaded frame sums to its per-frame energy") {
    const EnergyParams params;
    const double expected = offload_frame_energy({640, 480}, 8.0, 173e6, params);
    CHECK(expected == doctest::Approx(1.99118).epsilon(1e-4));

    MetricsLedger ledger;
    VehiclePeriodRecord row;
    row.time_s = 0.0;
    row.direction = Direction::uplink;
    row.frames = 1;
    row.frame_energy_j = expected;
    ledger.vehicle_series.push_back(row);
    CHECK(lifetime_energy(ledger, 0.0, 0.1) == expected);
}
