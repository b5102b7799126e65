#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "mqrng/philox.hpp"
#include "mqrng/source_model.hpp"

using namespace mqrng;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the Random123 distribution (kat_vectors).
    auto r = philox4x32({0, 0, 0, 0}, 0, 0);
    CHECK(r[0] == 0x6627e8d5u);
    CHECK(r[1] == 0xe169c58du);
    CHECK(r[2] == 0xbc57ac4cu);
    CHECK(r[3] == 0x9b00dbd8u);

    r = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                   0xffffffffu, 0xffffffffu);
    CHECK(r[0] == 0x408f276du);
    CHECK(r[1] == 0x41c83b0eu);
    CHECK(r[2] == 0xa20bc7c6u);
    CHECK(r[3] == 0x6d5451fdu);

    r = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                   0xa4093822u, 0x299f31d0u);
    CHECK(r[0] == 0xd16cfe09u);
    CHECK(r[1] == 0x94fdccebu);
    CHECK(r[2] == 0x5001e420u);
    CHECK(r[3] == 0x24126ea1u);
}

TEST_CASE("counter rng is position addressable") {
    CounterRng rng(0x1234abcd5678ef01ull);
    CHECK(rng.seed() == 0x1234abcd5678ef01ull);

    std::vector<double> whole(1000), front(300), back(700);
    rng.normals(0, whole);
    rng.normals(0, front);
    rng.normals(300, back);
    for (std::size_t i = 0; i < front.size(); ++i)
        CHECK(whole[i] == front[i]);
    for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(whole[300 + i] == back[i]);
    for (std::size_t i = 0; i < whole.size(); ++i)
        CHECK(whole[i] == rng.normal_at(i));

    std::vector<std::uint8_t> wb(257), fb(100), bb(157);
    rng.bytes(0, wb);
    rng.bytes(0, fb);
    rng.bytes(100, bb);
    for (std::size_t i = 0; i < fb.size(); ++i)
        CHECK(wb[i] == fb[i]);
    for (std::size_t i = 0; i < bb.size(); ++i)
        CHECK(wb[100 + i] == bb[i]);
}

TEST_CASE("normal stream moments") {
    CounterRng rng(42);
    const std::size_t n = 1000000;
    std::vector<double> z(n);
    rng.normals(0, z);
    double mean = 0.0;
    for (double v : z)
        mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : z)
        var += (v - mean) * (v - mean);
    var /= n - 1;
    CHECK(std::abs(mean) < 5e-3);
    CHECK(std::abs(var - 1.0) < 1e-2);
}

TEST_CASE("channel model validation and derived quantities") {
    ChannelModel m;
    CHECK(m.sigma_m2() == doctest::Approx(11.0));
    CHECK_NOTHROW(validate(m));

    ChannelModel bad = m;
    bad.sigma_q2 = 0.0;
    CHECK_THROWS_AS(validate(bad), std::domain_error);
    bad = m;
    bad.sigma_e2 = -1.0;
    CHECK_THROWS_AS(validate(bad), std::domain_error);
    bad = m;
    bad.lo_power_ref_mw = 0.0;
    CHECK_THROWS_AS(validate(bad), std::domain_error);

    CHECK(qcnr_db(10.0, 1.0) == doctest::Approx(10.0));
    CHECK(qcnr_db(100.0, 1.0) == doctest::Approx(20.0));
    CHECK(quantum_variance(11.0, 1.0) == doctest::Approx(10.0));
    CHECK_THROWS_AS(quantum_variance(1.0, 1.0), std::domain_error);
}

TEST_CASE("sample_block is a pure function of (model, position)") {
    ChannelModel m;
    m.seed = 99;
    const AnalogBlock whole = sample_block(m, 0, 100);
    const AnalogBlock front = sample_block(m, 0, 37);
    const AnalogBlock back = sample_block(m, 37, 63);
    CHECK(whole.channel_id == m.channel_id);
    REQUIRE(whole.samples.size() == 100);
    for (std::size_t i = 0; i < 37; ++i)
        CHECK(whole.samples[i] == front.samples[i]);
    for (std::size_t i = 0; i < 63; ++i)
        CHECK(whole.samples[37 + i] == back.samples[i]);

    const AnalogBlock again = sample_block(m, 0, 100);
    for (std::size_t i = 0; i < 100; ++i)
        CHECK(whole.samples[i] == again.samples[i]);
}

TEST_CASE("channel stream continues where it stopped") {
    ChannelModel m;
    m.seed = 7;
    ChannelStream s(m);
    const AnalogBlock a = s.next_block(64);
    const AnalogBlock b = s.next_block(64);
    CHECK(s.position() == 128);
    const AnalogBlock whole = sample_block(m, 0, 128);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(whole.samples[i] == a.samples[i]);
        CHECK(whole.samples[64 + i] == b.samples[i]);
    }
}

TEST_CASE("sampled variance matches the model") {
    ChannelModel m;
    m.sigma_q2 = 10.0;
    m.sigma_e2 = 1.0;
    m.seed = 5;
    const std::size_t n = 1000000;
    const AnalogBlock block = sample_block(m, 0, n);
    double var = 0.0;
    for (double v : block.samples)
        var += v * v;
    var /= n;
    CHECK(var == doctest::Approx(m.sigma_m2()).epsilon(0.01));
}

TEST_CASE("noise variance is linear in local oscillator power") {
    ChannelModel m;
    m.sigma_q2 = 10.0;
    m.sigma_e2 = 1.0;
    m.lo_power_ref_mw = 2.0;
    m.seed = 11;

    const ChannelModel half = scale_with_power(m, 1.0);
    CHECK(half.sigma_q2 == doctest::Approx(5.0));
    CHECK(half.sigma_e2 == doctest::Approx(1.0));

    const ChannelModel off = scale_with_power(m, 0.0);
    CHECK(off.sigma_q2 == 0.0);
    CHECK_THROWS_AS(scale_with_power(m, -1.0), std::domain_error);

    // LO off leaves only electronic noise in the sampled stream.
    const std::size_t n = 200000;
    const AnalogBlock block = sample_block(off, 0, n);
    double var = 0.0;
    for (double v : block.samples)
        var += v * v;
    var /= n;
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("distinct seeds give uncorrelated streams") {
    ChannelModel a, b;
    a.seed = 1;
    b.seed = 2;
    const std::size_t n = 10000000;
    const AnalogBlock sa = sample_block(a, 0, n);
    const AnalogBlock sb = sample_block(b, 0, n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += sa.samples[i];
        sy += sb.samples[i];
        sxy += sa.samples[i] * sb.samples[i];
        sxx += sa.samples[i] * sa.samples[i];
        syy += sb.samples[i] * sb.samples[i];
    }
    const double num = n * sxy - sx * sy;
    const double den = std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    const double r = num / den;
    CHECK(std::abs(r) < 4.5 / std::sqrt(static_cast<double>(n)));
}
