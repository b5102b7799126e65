#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "mqrng/adc.hpp"
#include "mqrng/entropy.hpp"
#include "mqrng/source_model.hpp"

using namespace mqrng;

namespace {

AdcConfig make_adc(int bits, double full_scale) {
    AdcConfig cfg;
    cfg.bits = bits;
    cfg.full_scale = full_scale;
    return cfg;
}

} // namespace

TEST_CASE("config validation") {
    CHECK_NOTHROW(validate(make_adc(12, 15.0)));
    CHECK_NOTHROW(validate(make_adc(2, 1.0)));
    CHECK_NOTHROW(validate(make_adc(16, 1.0)));
    CHECK_THROWS_AS(validate(make_adc(1, 1.0)), std::domain_error);
    CHECK_THROWS_AS(validate(make_adc(17, 1.0)), std::domain_error);
    CHECK_THROWS_AS(validate(make_adc(12, 0.0)), std::domain_error);
    CHECK_THROWS_AS(validate(make_adc(12, -2.0)), std::domain_error);
    AdcConfig bad = make_adc(12, 1.0);
    bad.sample_rate = 0.0;
    CHECK_THROWS_AS(validate(bad), std::domain_error);

    const AdcConfig cfg = make_adc(12, 15.0);
    CHECK(cfg.levels() == 4096);
    CHECK(cfg.max_code() == 4095);
    CHECK(cfg.bin_width() == doctest::Approx(30.0 / 4096));
}

TEST_CASE("mid-rise quantization and saturation") {
    const AdcConfig cfg = make_adc(12, 15.0);
    const double w = cfg.bin_width();

    CHECK(quantize(0.0, cfg) == 2048);
    CHECK(quantize(-15.0, cfg) == 0);
    CHECK(quantize(15.0 - 1e-9, cfg) == 4095);
    CHECK(quantize(15.0, cfg) == 4095);   // saturates at +R
    CHECK(quantize(1e9, cfg) == 4095);
    CHECK(quantize(-1e9, cfg) == 0);

    // Bin k covers [-R + k*w, -R + (k+1)*w): its center maps back to k.
    for (int k : {0, 1, 100, 2047, 2048, 4000, 4095})
        CHECK(quantize(-15.0 + (k + 0.5) * w, cfg) == k);
    CHECK(quantize(-15.0 + 3.0 * w, cfg) == 3);       // left edge inclusive
    CHECK(quantize(-15.0 + 3.0 * w - 1e-12, cfg) == 2);

    CHECK_THROWS_AS(quantize(std::numeric_limits<double>::quiet_NaN(), cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(quantize(std::numeric_limits<double>::infinity(), cfg),
                    std::invalid_argument);

    const AdcConfig small = make_adc(4, 1.0);
    CHECK(quantize(0.999, small) == 15);
    CHECK(quantize(-1.0, small) == 0);
}

TEST_CASE("lsb8 keeps the eight least significant bits") {
    CHECK(lsb8(0) == 0);
    CHECK(lsb8(255) == 255);
    CHECK(lsb8(256) == 0);
    CHECK(lsb8(4095) == 255);
    CHECK(lsb8(0x123) == 0x23);
    CHECK_THROWS_AS(lsb8(4096), std::invalid_argument);
}

TEST_CASE("digitize_block maps elementwise") {
    ChannelModel m;
    m.seed = 3;
    m.channel_id = 4;
    const AnalogBlock block = sample_block(m, 0, 500);
    const AdcConfig cfg = make_adc(12, 15.0);
    const DigitizedBlock dig = digitize_block(block, cfg);
    CHECK(dig.channel_id == 4);
    REQUIRE(dig.codes.size() == 500);
    for (std::size_t i = 0; i < 500; ++i)
        CHECK(dig.codes[i] == quantize(block.samples[i], cfg));
}

TEST_CASE("optimize_range at the 10 dB operating point") {
    ChannelModel m;
    m.sigma_q2 = 10.0;
    m.sigma_e2 = 1.0;
    const double r = optimize_range(m);
    // Desk analysis for QCNR = 10 dB puts the optimum near 4.5 sigma_M.
    CHECK(r > 14.0);
    CHECK(r < 16.0);

    ConditionalModel cm;
    cm.sigma_q2 = m.sigma_q2;
    cm.sigma_e2 = m.sigma_e2;
    cm.adc = make_adc(12, r);
    const double h_opt = worst_case_min_entropy(cm);
    CHECK(h_opt >= 9.201);

    // No probed range may beat the optimizer's pick.
    for (double scale : {0.6, 0.8, 1.3, 2.0}) {
        cm.adc.full_scale = r * scale;
        CHECK(worst_case_min_entropy(cm) <= h_opt + 1e-6);
    }

    ChannelModel degenerate = m;
    degenerate.sigma_q2 = 0.0;
    CHECK_THROWS_AS(optimize_range(degenerate), std::domain_error);
}

TEST_CASE("optimize_range scales with the noise amplitude") {
    ChannelModel m;
    m.sigma_q2 = 10.0;
    m.sigma_e2 = 1.0;
    const double r1 = optimize_range(m);
    ChannelModel big = m;
    big.sigma_q2 = 40.0;
    big.sigma_e2 = 4.0;
    const double r2 = optimize_range(big);
    CHECK(r2 == doctest::Approx(2.0 * r1).epsilon(5e-3));
}
