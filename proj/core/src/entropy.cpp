#include "mqrng/entropy.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "mqrng/philox.hpp"

namespace mqrng {

double ConditionalModel::e_max() const {
    return 5.0 * std::sqrt(sigma_e2);
}

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

// P(lo < X <= hi) for X ~ Normal(mu, sigma^2), stable in both tails.
double gauss_interval_prob(double lo, double hi, double mu, double sigma) {
    const double za = (lo - mu) / sigma * kInvSqrt2;
    const double zb = (hi - mu) / sigma * kInvSqrt2;
    if (za >= 0.0)
        return 0.5 * (std::erfc(za) - std::erfc(zb));
    if (zb <= 0.0)
        return 0.5 * (std::erfc(-zb) - std::erfc(-za));
    return 0.5 * (std::erf(zb) - std::erf(za));
}

void check_model(const ConditionalModel& model) {
    validate(model.adc);
    if (!(model.sigma_q2 > 0.0))
        throw std::domain_error("conditional model requires sigma_q2 > 0");
    if (!(model.sigma_e2 >= 0.0))
        throw std::domain_error("conditional model requires sigma_e2 >= 0");
}

// Largest single-bin probability at a fixed classical value e. The interior
// mass peaks in the bin whose center is nearest e, so probing two bins on
// either side plus both saturation bins covers every candidate.
double max_bin_prob(double e, const ConditionalModel& model) {
    const double sigma = std::sqrt(model.sigma_q2);
    const double range = model.adc.full_scale;
    const double width = model.adc.bin_width();
    const int top = model.adc.max_code();

    const int home = static_cast<int>(
        std::clamp(std::floor((e + range) / width), 0.0, static_cast<double>(top)));

    double best = 0.0;
    auto probe = [&](int bin) {
        const double lo = bin == 0 ? -std::numeric_limits<double>::infinity()
                                   : -range + bin * width;
        const double hi = bin == top ? std::numeric_limits<double>::infinity()
                                     : -range + (bin + 1) * width;
        best = std::max(best, gauss_interval_prob(lo, hi, e, sigma));
    };
    probe(0);
    probe(top);
    for (int k = -2; k <= 2; ++k)
        probe(std::clamp(home + k, 0, top));
    return best;
}

} // namespace

double conditional_bin_prob(int bin, double e, const ConditionalModel& model) {
    check_model(model);
    const int top = model.adc.max_code();
    if (bin < 0 || bin > top)
        throw std::out_of_range("bin outside the code range");
    const double range = model.adc.full_scale;
    const double width = model.adc.bin_width();
    const double lo = bin == 0 ? -std::numeric_limits<double>::infinity()
                               : -range + bin * width;
    const double hi = bin == top ? std::numeric_limits<double>::infinity()
                                 : -range + (bin + 1) * width;
    return gauss_interval_prob(lo, hi, e, std::sqrt(model.sigma_q2));
}

double worst_case_min_entropy(const ConditionalModel& model) {
    check_model(model);

    const double emax = model.e_max();
    double best_p = 0.0;
    double best_e = 0.0;
    auto consider = [&](double e) {
        const double p = max_bin_prob(e, model);
        if (p > best_p) {
            best_p = p;
            best_e = e;
        }
    };

    if (emax == 0.0) {
        consider(0.0);
        return -std::log2(best_p);
    }

    int points = std::max(model.e_grid_points, 1001);
    if (points % 2 == 0)
        ++points;
    const double step = 2.0 * emax / (points - 1);
    for (int i = 0; i < points; ++i)
        consider(-emax + i * step);

    // Shrinking-window refinement around the incumbent: after each pass the
    // true local peak lies within one grid step of the sampled argmax.
    double half = step;
    double prev_bits = -std::log2(best_p);
    for (int iter = 0; iter < 60; ++iter) {
        const double lo = std::max(best_e - half, -emax);
        const double hi = std::min(best_e + half, emax);
        const int n = 33;
        const double s = (hi - lo) / (n - 1);
        for (int i = 0; i < n; ++i)
            consider(lo + i * s);
        half = s;
        const double bits = -std::log2(best_p);
        if (std::abs(prev_bits - bits) < 1e-12 && iter >= 3)
            break;
        prev_bits = bits;
    }
    return -std::log2(best_p);
}

namespace {

template <typename Symbol>
McvEstimate mcv_impl(std::span<const Symbol> symbols, int alphabet_size) {
    if (symbols.empty())
        throw std::invalid_argument("mcv_min_entropy needs at least one symbol");
    if (alphabet_size < 2)
        throw std::invalid_argument("alphabet_size must be at least 2");
    std::vector<std::size_t> counts(static_cast<std::size_t>(alphabet_size), 0);
    for (Symbol s : symbols) {
        if (static_cast<std::size_t>(s) >= counts.size())
            throw std::out_of_range("symbol outside the declared alphabet");
        ++counts[s];
    }
    const double n = static_cast<double>(symbols.size());
    const double mode = static_cast<double>(*std::max_element(counts.begin(), counts.end()));

    McvEstimate est;
    est.sample_count = symbols.size();
    est.p_hat = mode / n;
    double se = 0.0;
    if (symbols.size() >= 2)
        se = std::sqrt(est.p_hat * (1.0 - est.p_hat) / (n - 1.0));
    est.p_upper = std::min(1.0, est.p_hat + 2.576 * se);
    est.bits = -std::log2(est.p_upper) + 0.0; // +0.0 keeps -log2(1) from reading -0
    return est;
}

} // namespace

McvEstimate mcv_min_entropy(std::span<const std::uint8_t> symbols, int alphabet_size) {
    return mcv_impl(symbols, alphabet_size);
}

McvEstimate mcv_min_entropy(std::span<const std::uint16_t> symbols, int alphabet_size) {
    return mcv_impl(symbols, alphabet_size);
}

namespace {

constexpr int kIidLags[5] = {1, 2, 8, 16, 32};
constexpr int kIidStatCount = 18;

// The 18 shuffle statistics, in report order.
const char* const kIidNames[kIidStatCount] = {
    "excursion",
    "num_directional_runs",
    "len_directional_runs",
    "num_increases_decreases",
    "num_runs_median",
    "len_runs_median",
    "avg_collision",
    "max_collision",
    "periodicity_lag1",
    "periodicity_lag2",
    "periodicity_lag8",
    "periodicity_lag16",
    "periodicity_lag32",
    "covariance_lag1",
    "covariance_lag2",
    "covariance_lag8",
    "covariance_lag16",
    "covariance_lag32",
};

struct IidStats {
    std::array<double, kIidStatCount> v{};
};

// Mean and median are multiset invariants, so they are computed once on the
// original data and shared by every shuffled recomputation.
IidStats compute_stats(std::span<const std::uint8_t> s, double mean, double median) {
    IidStats out;
    const std::size_t n = s.size();

    double running = 0.0;
    double excursion = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        running += s[i];
        excursion = std::max(excursion, std::abs(running - (i + 1) * mean));
    }
    out.v[0] = excursion;

    // Directional runs over the +/-1 comparison sequence of length n - 1.
    std::size_t dir_runs = 1;
    std::size_t dir_len = 0, dir_cur = 1;
    std::size_t ups = 0;
    bool prev_up = s[1] >= s[0];
    if (prev_up)
        ++ups;
    for (std::size_t i = 2; i < n; ++i) {
        const bool up = s[i] >= s[i - 1];
        if (up)
            ++ups;
        if (up == prev_up) {
            ++dir_cur;
        } else {
            dir_len = std::max(dir_len, dir_cur);
            dir_cur = 1;
            ++dir_runs;
            prev_up = up;
        }
    }
    dir_len = std::max(dir_len, dir_cur);
    out.v[1] = static_cast<double>(dir_runs);
    out.v[2] = static_cast<double>(dir_len);
    out.v[3] = static_cast<double>(std::max(ups, (n - 1) - ups));

    // Runs against the median over the full length-n sequence.
    std::size_t med_runs = 1;
    std::size_t med_len = 0, med_cur = 1;
    bool prev_ge = s[0] >= median;
    for (std::size_t i = 1; i < n; ++i) {
        const bool ge = s[i] >= median;
        if (ge == prev_ge) {
            ++med_cur;
        } else {
            med_len = std::max(med_len, med_cur);
            med_cur = 1;
            ++med_runs;
            prev_ge = ge;
        }
    }
    med_len = std::max(med_len, med_cur);
    out.v[4] = static_cast<double>(med_runs);
    out.v[5] = static_cast<double>(med_len);

    // Collision scan: length of each prefix up to and including the first
    // repeated byte, restarting after every hit.
    std::uint64_t seen[4];
    std::size_t coll_sum = 0, coll_count = 0, coll_max = 0;
    std::size_t i = 0;
    while (i < n) {
        seen[0] = seen[1] = seen[2] = seen[3] = 0;
        std::size_t j = i;
        for (; j < n; ++j) {
            const unsigned b = s[j];
            std::uint64_t& w = seen[b >> 6];
            const std::uint64_t bit = 1ull << (b & 63);
            if (w & bit) {
                const std::size_t len = j - i + 1;
                coll_sum += len;
                coll_max = std::max(coll_max, len);
                ++coll_count;
                break;
            }
            w |= bit;
        }
        if (j == n)
            break;
        i = j + 1;
    }
    out.v[6] = coll_count ? static_cast<double>(coll_sum) / coll_count : 0.0;
    out.v[7] = static_cast<double>(coll_max);

    for (int li = 0; li < 5; ++li) {
        const std::size_t lag = kIidLags[li];
        std::size_t matches = 0;
        double cov = 0.0;
        for (std::size_t k = 0; k + lag < n; ++k) {
            matches += s[k] == s[k + lag];
            cov += static_cast<double>(s[k]) * s[k + lag];
        }
        out.v[8 + li] = static_cast<double>(matches);
        out.v[13 + li] = cov;
    }
    return out;
}

} // namespace

IidReport iid_permutation_test(std::span<const std::uint8_t> symbols,
                               int num_shuffles,
                               std::uint64_t seed,
                               int workers) {
    constexpr std::size_t kMinSamples = 100000;
    if (symbols.size() < kMinSamples)
        throw std::invalid_argument("iid_permutation_test needs at least 100000 samples");
    if (num_shuffles < 100)
        throw std::invalid_argument("iid_permutation_test needs at least 100 shuffles");

    const std::size_t n = symbols.size();
    double mean = 0.0;
    for (std::uint8_t b : symbols)
        mean += b;
    mean /= static_cast<double>(n);

    std::vector<std::uint8_t> sorted(symbols.begin(), symbols.end());
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    double median = sorted[n / 2];
    if (n % 2 == 0) {
        std::nth_element(sorted.begin(), sorted.begin() + (n / 2 - 1), sorted.end());
        median = 0.5 * (median + sorted[n / 2 - 1]);
    }
    sorted.clear();
    sorted.shrink_to_fit();

    const IidStats original = compute_stats(symbols, mean, median);

    std::array<std::atomic<int>, kIidStatCount> greater{};
    std::array<std::atomic<int>, kIidStatCount> equal{};

    int nworkers = workers > 0 ? workers
                               : static_cast<int>(std::thread::hardware_concurrency());
    if (nworkers < 1)
        nworkers = 1;
    nworkers = std::min(nworkers, num_shuffles);

    std::atomic<int> next{0};
    auto run = [&]() {
        std::vector<std::uint8_t> buf(symbols.begin(), symbols.end());
        CounterRng rng(seed);
        for (;;) {
            const int shuffle = next.fetch_add(1, std::memory_order_relaxed);
            if (shuffle >= num_shuffles)
                break;
            // Each shuffle owns a disjoint, position-addressed slice of the
            // counter stream, so results match for any worker count.
            std::uint64_t pos = static_cast<std::uint64_t>(shuffle) * n;
            std::copy(symbols.begin(), symbols.end(), buf.begin());
            for (std::size_t i = n - 1; i > 0; --i) {
                const std::uint64_t r = rng.u64_at(pos++);
                const std::size_t j = static_cast<std::size_t>(
                    (static_cast<unsigned __int128>(r) * (i + 1)) >> 64);
                std::swap(buf[i], buf[j]);
            }
            const IidStats st = compute_stats(buf, mean, median);
            for (int k = 0; k < kIidStatCount; ++k) {
                if (st.v[k] > original.v[k])
                    greater[k].fetch_add(1, std::memory_order_relaxed);
                else if (st.v[k] == original.v[k])
                    equal[k].fetch_add(1, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int t = 0; t < nworkers; ++t)
        pool.emplace_back(run);
    for (auto& t : pool)
        t.join();

    const int cutoff = static_cast<int>(0.0005 * num_shuffles);
    IidReport report;
    report.sample_count = n;
    report.num_shuffles = num_shuffles;
    report.pass = true;
    report.statistics.reserve(kIidStatCount);
    for (int k = 0; k < kIidStatCount; ++k) {
        IidStatistic st;
        st.name = kIidNames[k];
        st.original = original.v[k];
        st.count_greater = greater[k].load();
        st.count_equal = equal[k].load();
        st.fail = (st.count_greater + st.count_equal) <= cutoff ||
                  st.count_greater >= num_shuffles - cutoff;
        report.pass = report.pass && !st.fail;
        report.statistics.push_back(std::move(st));
    }
    return report;
}

} // namespace mqrng
