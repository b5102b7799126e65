#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mqrng/adc.hpp"
#include "mqrng/entropy.hpp"
#include "mqrng/extractors.hpp"
#include "mqrng/philox.hpp"
#include "mqrng/source_model.hpp"

using namespace mqrng;

namespace {

ConditionalModel make_model(double sq2, double se2, int bits, double r) {
    ConditionalModel m;
    m.sigma_q2 = sq2;
    m.sigma_e2 = se2;
    m.adc.bits = bits;
    m.adc.full_scale = r;
    return m;
}

double gauss_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::acos(-1.0)));
}

// Adaptive Simpson quadrature, independent of the erf-based implementation.
double simpson(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth, double mu, double sigma) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = gauss_pdf(lm, mu, sigma), frm = gauss_pdf(rm, mu, sigma);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(a, m, fa, flm, fm, left, tol / 2.0, depth - 1, mu, sigma) +
           simpson(m, b, fm, frm, fb, right, tol / 2.0, depth - 1, mu, sigma);
}

double integrate_gauss(double a, double b, double mu, double sigma) {
    const double fa = gauss_pdf(a, mu, sigma);
    const double fb = gauss_pdf(b, mu, sigma);
    const double m = 0.5 * (a + b);
    const double fm = gauss_pdf(m, mu, sigma);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(a, b, fa, fm, fb, whole, 1e-13, 40, mu, sigma);
}

// Exhaustive oracle: max bin probability over every bin and a dense e-grid.
double brute_force_entropy(const ConditionalModel& m, int grid_points) {
    const double emax = m.e_max();
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double e = grid_points == 1
                             ? 0.0
                             : -emax + 2.0 * emax * i / (grid_points - 1);
        for (int bin = 0; bin <= m.adc.max_code(); ++bin)
            worst = std::max(worst, conditional_bin_prob(bin, e, m));
    }
    return -std::log2(worst);
}

} // namespace

TEST_CASE("conditional_bin_prob matches adaptive quadrature") {
    const ConditionalModel m = make_model(10.0, 1.0, 12, 15.0);
    const double w = m.adc.bin_width();
    const double sigma = std::sqrt(m.sigma_q2);
    for (int bin : {1, 100, 2047, 2048, 3000, 4094}) {
        for (double e : {0.0, 1.7, -4.2}) {
            const double lo = -15.0 + bin * w;
            const double hi = lo + w;
            const double oracle = integrate_gauss(lo, hi, e, sigma);
            CHECK(std::abs(conditional_bin_prob(bin, e, m) - oracle) < 1e-9);
        }
    }

    // Saturation bins absorb the open tails.
    const double inner = integrate_gauss(-15.0 + w, 15.0 - w, 0.0, sigma);
    const double p0 = conditional_bin_prob(0, 0.0, m);
    const double ptop = conditional_bin_prob(4095, 0.0, m);
    CHECK(p0 + ptop + inner == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bin probabilities sum to one") {
    for (int bits : {4, 12}) {
        const ConditionalModel m = make_model(7.3, 0.9, bits, 11.0);
        for (double e : {0.0, 2.3, -4.7}) {
            double sum = 0.0;
            for (int bin = 0; bin <= m.adc.max_code(); ++bin)
                sum += conditional_bin_prob(bin, e, m);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("wide gaussian puts the expected mass in the center bin") {
    const ConditionalModel m = make_model(10000.0, 1.0, 12, 1.0);
    const double sigma = 100.0;
    const double w = m.adc.bin_width();
    const double p = conditional_bin_prob(2048, 0.0, m);
    const double flat = w / (sigma * std::sqrt(2.0 * std::acos(-1.0)));
    CHECK(std::abs(p - flat) / flat < 1e-9);
    CHECK(std::abs(p - integrate_gauss(0.0, w, 0.0, sigma)) < 1e-12);
}

TEST_CASE("saturation dominates far outside the range") {
    const ConditionalModel m = make_model(4.0, 1.0, 12, 15.0);
    const double e = 15.0 + 10.0 * 2.0; // R + 10 sigma_q
    CHECK(conditional_bin_prob(4095, e, m) > 1.0 - 1e-9);
    CHECK(conditional_bin_prob(0, -e, m) > 1.0 - 1e-9);
}

TEST_CASE("bin prob input validation") {
    const ConditionalModel m = make_model(10.0, 1.0, 12, 15.0);
    CHECK_THROWS_AS(conditional_bin_prob(-1, 0.0, m), std::out_of_range);
    CHECK_THROWS_AS(conditional_bin_prob(4096, 0.0, m), std::out_of_range);
    const ConditionalModel bad = make_model(0.0, 1.0, 12, 15.0);
    CHECK_THROWS_AS(conditional_bin_prob(0, 0.0, bad), std::domain_error);
}

TEST_CASE("worst case entropy with no classical noise is the centered case") {
    ConditionalModel m = make_model(9.0, 0.0, 12, 12.0);
    const double h = worst_case_min_entropy(m);
    double worst = 0.0;
    for (int bin = 0; bin <= m.adc.max_code(); ++bin)
        worst = std::max(worst, conditional_bin_prob(bin, 0.0, m));
    CHECK(h == doctest::Approx(-std::log2(worst)).epsilon(1e-12));
}

TEST_CASE("worst case entropy agrees with a brute-force oracle on 4-bit adc") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uq(0.5, 3.0), ue(0.05, 1.0), ur(2.0, 12.0);
    for (int trial = 0; trial < 5; ++trial) {
        const ConditionalModel m =
            make_model(uq(rng) * uq(rng), ue(rng) * ue(rng), 4, ur(rng));
        const double fast = worst_case_min_entropy(m);
        const double slow = brute_force_entropy(m, 200001);
        CHECK(std::abs(fast - slow) <= 1e-6);
    }
}

TEST_CASE("worst case entropy is monotone in classical noise") {
    double prev = 1e9;
    for (double se2 : {0.0, 0.25, 1.0, 2.0, 4.0}) {
        const double h = worst_case_min_entropy(make_model(10.0, se2, 12, 15.0));
        CHECK(h <= prev + 1e-9);
        prev = h;
    }
}

TEST_CASE("worst case entropy is scale invariant") {
    const double h1 = worst_case_min_entropy(make_model(10.0, 1.0, 12, 15.0));
    const double h2 = worst_case_min_entropy(make_model(40.0, 4.0, 12, 30.0));
    CHECK(h1 == doctest::Approx(h2).epsilon(1e-9));
    CHECK(h1 <= 12.0);
    CHECK(h1 >= 0.0);
}

TEST_CASE("entropy never exceeds the support size") {
    // A narrow signal leaves most bins with negligible probability.
    const ConditionalModel m = make_model(0.01, 0.0, 12, 15.0);
    const double h = worst_case_min_entropy(m);
    int support = 0;
    for (int bin = 0; bin <= m.adc.max_code(); ++bin)
        support += conditional_bin_prob(bin, 0.0, m) > 0.0;
    CHECK(h <= 12.0);
    CHECK(h <= std::log2(static_cast<double>(support)) + 1e-9);
}

TEST_CASE("mcv estimator basics") {
    const std::vector<std::uint8_t> constant(20000, 42);
    const McvEstimate c = mcv_min_entropy(constant, 256);
    CHECK(c.p_hat == doctest::Approx(1.0));
    CHECK(c.bits == doctest::Approx(0.0));

    CounterRng rng(0xC000);
    std::vector<std::uint8_t> uniform(1000000);
    rng.bytes(0, uniform);
    const McvEstimate u = mcv_min_entropy(uniform, 256);
    CHECK(u.bits > 7.8);
    CHECK(u.bits < 8.0);
    CHECK(u.p_upper >= u.p_hat);

    CHECK_THROWS_AS(mcv_min_entropy(std::vector<std::uint8_t>{}, 256),
                    std::invalid_argument);
    const std::vector<std::uint8_t> small{1, 2, 3};
    CHECK_THROWS_AS(mcv_min_entropy(small, 1), std::invalid_argument);
    CHECK_THROWS_AS(mcv_min_entropy(small, 3), std::out_of_range);

    const std::vector<std::uint16_t> codes{0, 1, 2, 3, 4095, 4095};
    const McvEstimate w = mcv_min_entropy(codes, 4096);
    CHECK(w.p_hat == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("mcv bound is conservative on uniform data") {
    CounterRng rng(0x715EC);
    std::vector<std::uint8_t> buf(10000);
    int exceed = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        rng.bytes(static_cast<std::uint64_t>(trial) * buf.size(), buf);
        if (mcv_min_entropy(buf, 256).bits > 8.0)
            ++exceed;
    }
    CHECK(exceed < 10); // < 1% of trials overstate the true 8 bits
}

TEST_CASE("iid battery passes uniform data and is scheduling independent") {
    CounterRng rng(0xC000);
    std::vector<std::uint8_t> uniform(100000);
    rng.bytes(0, uniform);

    const IidReport one = iid_permutation_test(uniform, 200, 0, 1);
    const IidReport three = iid_permutation_test(uniform, 200, 0, 3);
    CHECK(one.pass);
    REQUIRE(one.statistics.size() == three.statistics.size());
    for (std::size_t i = 0; i < one.statistics.size(); ++i) {
        CHECK(one.statistics[i].count_greater == three.statistics[i].count_greater);
        CHECK(one.statistics[i].count_equal == three.statistics[i].count_equal);
        CHECK(one.statistics[i].original == three.statistics[i].original);
    }
}

TEST_CASE("iid battery rejects serially correlated data") {
    CounterRng rng(0xD000);
    const std::size_t n = 100000;
    std::vector<std::uint8_t> ar(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        prev = 0.5 * prev + rng.normal_at(i);
        ar[i] = static_cast<std::uint8_t>(
            std::clamp(static_cast<int>(std::lround(prev * 30.0)) + 128, 0, 255));
    }
    const IidReport rep = iid_permutation_test(ar, 200, 0);
    CHECK_FALSE(rep.pass);
    bool structural = false;
    for (const auto& st : rep.statistics)
        if (st.fail && (st.name.find("covariance") != std::string::npos ||
                        st.name.find("runs") != std::string::npos))
            structural = true;
    CHECK(structural);
}

TEST_CASE("iid battery rejects a monotone ramp") {
    std::vector<std::uint8_t> ramp(100000);
    for (std::size_t i = 0; i < ramp.size(); ++i)
        ramp[i] = static_cast<std::uint8_t>((i * 255) / (ramp.size() - 1));
    const IidReport rep = iid_permutation_test(ramp, 200, 0);
    CHECK_FALSE(rep.pass);
    bool directional = false;
    for (const auto& st : rep.statistics)
        if (st.fail && st.name.find("directional") != std::string::npos)
            directional = true;
    CHECK(directional);
}

TEST_CASE("iid battery input validation") {
    std::vector<std::uint8_t> tiny(1000, 7);
    CHECK_THROWS_AS(iid_permutation_test(tiny, 200, 0), std::invalid_argument);
    std::vector<std::uint8_t> enough(100000, 7);
    CHECK_THROWS_AS(iid_permutation_test(enough, 99, 0), std::invalid_argument);
}
