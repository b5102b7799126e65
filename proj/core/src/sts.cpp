#include "mqrng/sts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace mqrng {

namespace {

double igamc(double a, double x) {
    if (x <= 0.0)
        return 1.0;
    return boost::math::gamma_q(a, x);
}

double phi(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

TestResult make_result(std::string name, double statistic, double p) {
    TestResult r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.p_value = p;
    r.pass = p >= 0.01;
    return r;
}

TestResult monobit(const std::vector<std::uint8_t>& b) {
    const double n = static_cast<double>(b.size());
    long long s = 0;
    for (std::uint8_t v : b)
        s += 2 * v - 1;
    const double s_obs = std::abs(static_cast<double>(s)) / std::sqrt(n);
    return make_result("monobit", s_obs, std::erfc(s_obs * 0.7071067811865475244));
}

TestResult block_frequency(const std::vector<std::uint8_t>& b) {
    constexpr std::size_t M = 128;
    const std::size_t N = b.size() / M;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < M; ++j)
            ones += b[i * M + j];
        const double pi = static_cast<double>(ones) / M;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * M;
    return make_result("block_frequency", chi2, igamc(N / 2.0, chi2 / 2.0));
}

TestResult runs(const std::vector<std::uint8_t>& b) {
    const std::size_t n = b.size();
    std::size_t ones = 0;
    for (std::uint8_t v : b)
        ones += v;
    const double pi = static_cast<double>(ones) / n;
    if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
        return make_result("runs", 0.0, 0.0);
    std::size_t v = 1;
    for (std::size_t i = 1; i < n; ++i)
        v += b[i] != b[i - 1];
    const double dn = static_cast<double>(n);
    const double num = std::abs(static_cast<double>(v) - 2.0 * dn * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * dn) * pi * (1.0 - pi);
    return make_result("runs", static_cast<double>(v), std::erfc(num / den));
}

TestResult longest_run(const std::vector<std::uint8_t>& b) {
    const std::size_t n = b.size();
    std::size_t M;
    int vmin, vmax;
    const double* pi;
    static const double pi8[4] = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    static const double pi128[6] = {0.1174035788, 0.242955959, 0.249363483,
                                    0.17517706, 0.102701071, 0.112398847};
    static const double pi10k[7] = {0.0882, 0.2092, 0.2483, 0.1933,
                                    0.1208, 0.0675, 0.0727};
    if (n < 6272) {
        M = 8; vmin = 1; vmax = 4; pi = pi8;
    } else if (n < 750000) {
        M = 128; vmin = 4; vmax = 9; pi = pi128;
    } else {
        M = 10000; vmin = 10; vmax = 16; pi = pi10k;
    }
    const int classes = vmax - vmin + 1;
    const std::size_t N = n / M;
    std::vector<std::size_t> nu(static_cast<std::size_t>(classes), 0);
    for (std::size_t i = 0; i < N; ++i) {
        int longest = 0, run = 0;
        for (std::size_t j = 0; j < M; ++j) {
            run = b[i * M + j] ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        ++nu[static_cast<std::size_t>(std::clamp(longest, vmin, vmax) - vmin)];
    }
    double chi2 = 0.0;
    for (int c = 0; c < classes; ++c) {
        const double expect = static_cast<double>(N) * pi[c];
        const double d = static_cast<double>(nu[c]) - expect;
        chi2 += d * d / expect;
    }
    return make_result("longest_run", chi2, igamc((classes - 1) / 2.0, chi2 / 2.0));
}

TestResult cusum(const std::vector<std::uint8_t>& b, bool backward) {
    const long long n = static_cast<long long>(b.size());
    long long s = 0, z = 0;
    for (long long i = 0; i < n; ++i) {
        const std::uint8_t bit = backward ? b[b.size() - 1 - i] : b[i];
        s += 2 * bit - 1;
        z = std::max(z, std::llabs(s));
    }
    const double sq = std::sqrt(static_cast<double>(n));
    double sum1 = 0.0, sum2 = 0.0;
    // C-style truncating division matches the reference summation bounds.
    for (long long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k)
        sum1 += phi((4 * k + 1) * z / sq) - phi((4 * k - 1) * z / sq);
    for (long long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k)
        sum2 += phi((4 * k + 3) * z / sq) - phi((4 * k + 1) * z / sq);
    const double p = 1.0 - sum1 + sum2;
    return make_result(backward ? "cusum_backward" : "cusum_forward",
                       static_cast<double>(z), std::clamp(p, 0.0, 1.0));
}

// Overlapping m-bit pattern counts with wraparound, m <= 16. Longer-pattern
// counts fold down to any shorter length by summing suffix extensions, since
// the shorter pattern at a position is a prefix of the longer one.
std::vector<std::uint32_t> pattern_counts16(const std::vector<std::uint8_t>& b) {
    const std::size_t n = b.size();
    std::vector<std::uint32_t> counts(1u << 16, 0);
    std::uint32_t pat = 0;
    for (std::size_t k = 0; k < 16; ++k)
        pat = (pat << 1) | b[k % n];
    ++counts[pat & 0xffff];
    for (std::size_t i = 1; i < n; ++i) {
        pat = ((pat << 1) | b[(i + 15) % n]) & 0xffff;
        ++counts[pat];
    }
    return counts;
}

std::vector<std::uint32_t> fold_counts(const std::vector<std::uint32_t>& counts, int down_by) {
    std::vector<std::uint32_t> out(counts.size() >> down_by, 0);
    for (std::size_t p = 0; p < counts.size(); ++p)
        out[p >> down_by] += counts[p];
    return out;
}

double psi_sq(const std::vector<std::uint32_t>& counts, std::size_t n) {
    double sum = 0.0;
    for (std::uint32_t c : counts)
        sum += static_cast<double>(c) * c;
    return sum * static_cast<double>(counts.size()) / static_cast<double>(n) -
           static_cast<double>(n);
}

double phi_m(const std::vector<std::uint32_t>& counts, std::size_t n) {
    double sum = 0.0;
    for (std::uint32_t c : counts) {
        if (c) {
            const double f = static_cast<double>(c) / static_cast<double>(n);
            sum += f * std::log(f);
        }
    }
    return sum;
}

} // namespace

TestReport run_sts_subset(const BitVector& bits) {
    constexpr std::size_t kMinBits = 1000000;
    if (bits.size() < kMinBits)
        throw std::invalid_argument("run_sts_subset needs at least 1000000 bits");

    const std::size_t n = bits.size();
    std::vector<std::uint8_t> b(n);
    for (std::size_t i = 0; i < n; ++i)
        b[i] = bits[i];

    TestReport report;
    report.bit_count = n;
    report.results.push_back(monobit(b));
    report.results.push_back(block_frequency(b));
    report.results.push_back(runs(b));
    report.results.push_back(longest_run(b));
    report.results.push_back(cusum(b, false));
    report.results.push_back(cusum(b, true));

    const auto c16 = pattern_counts16(b);
    const auto c15 = fold_counts(c16, 1);
    const auto c14 = fold_counts(c16, 2);
    const double psi16 = psi_sq(c16, n);
    const double psi15 = psi_sq(c15, n);
    const double psi14 = psi_sq(c14, n);
    const double del1 = std::max(psi16 - psi15, 0.0);
    const double del2 = std::max(psi16 - 2.0 * psi15 + psi14, 0.0);
    report.results.push_back(
        make_result("serial_p1", del1, igamc(16384.0, del1 / 2.0)));
    report.results.push_back(
        make_result("serial_p2", del2, igamc(8192.0, del2 / 2.0)));

    const auto c11 = fold_counts(c16, 5);
    const auto c10 = fold_counts(c16, 6);
    const double apen = phi_m(c10, n) - phi_m(c11, n);
    const double chi2 = std::max(2.0 * n * (std::log(2.0) - apen), 0.0);
    report.results.push_back(
        make_result("approximate_entropy", chi2, igamc(512.0, chi2 / 2.0)));

    report.pass = true;
    for (const auto& r : report.results)
        report.pass = report.pass && r.pass;
    return report;
}

} // namespace mqrng
