#include "mqrng/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mqrng {

namespace {

// Numerator and windowed second moments share one pass per lag; prefix sums
// would be cheaper for the moments but this keeps every term in identical
// order for the r(a,b,l) == r(b,a,-l) bit-exactness property.
double lag_r(std::span<const double> ca, std::span<const double> cb, long lag) {
    const long n = static_cast<long>(ca.size());
    const long lo = std::max(0l, -lag);
    const long hi = n - std::max(0l, lag);
    double num = 0.0, da = 0.0, db = 0.0;
    for (long i = lo; i < hi; ++i) {
        const double x = ca[i];
        const double y = cb[i + lag];
        num += x * y;
        da += x * x;
        db += y * y;
    }
    if (da == 0.0 || db == 0.0)
        return 0.0;
    return num / std::sqrt(da * db);
}

} // namespace

CorrelationReport cross_correlation(std::span<const std::uint8_t> a,
                                    std::span<const std::uint8_t> b,
                                    int max_lag) {
    if (a.size() != b.size())
        throw std::invalid_argument("cross_correlation requires equal lengths");
    if (a.size() < 10000)
        throw std::invalid_argument("cross_correlation needs at least 10000 symbols");
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) > a.size() / 10)
        throw std::invalid_argument("max_lag must lie in [0, n / 10]");

    const std::size_t n = a.size();
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    std::vector<double> ca(n), cb(n);
    double var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ca[i] = a[i] - mean_a;
        cb[i] = b[i] - mean_b;
        var_a += ca[i] * ca[i];
        var_b += cb[i] * cb[i];
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw std::domain_error("cross_correlation requires nonconstant inputs");

    const bool self = std::equal(a.begin(), a.end(), b.begin());

    CorrelationReport rep;
    rep.max_lag = max_lag;
    rep.n = n;
    rep.reference = 1.0 / std::sqrt(static_cast<double>(n));
    rep.values.reserve(2 * static_cast<std::size_t>(max_lag) + 1);
    bool have_extreme = false;
    for (long lag = -max_lag; lag <= max_lag; ++lag) {
        const double r = lag_r(ca, cb, lag);
        rep.values.push_back(r);
        if (self && lag == 0)
            continue;
        if (!have_extreme) {
            rep.max_positive = rep.max_negative = r;
            have_extreme = true;
        } else {
            rep.max_positive = std::max(rep.max_positive, r);
            rep.max_negative = std::min(rep.max_negative, r);
        }
    }
    return rep;
}

CorrelationReport extractor_strength(const BitMatrix& inputs, const BitVector& outputs) {
    const std::size_t n = inputs.rows();
    const std::size_t cols = inputs.cols();
    if (outputs.size() != n)
        throw std::invalid_argument("extractor_strength needs one output bit per input row");
    if (n == 0 || cols == 0)
        throw std::invalid_argument("extractor_strength needs a nonempty matrix");

    std::vector<std::uint64_t> sx(cols, 0), cxy(cols, 0);
    std::uint64_t sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool y = outputs[i];
        sy += y;
        for (std::size_t j = 0; j < cols; ++j) {
            if (inputs.get(i, j)) {
                ++sx[j];
                cxy[j] += y;
            }
        }
    }

    CorrelationReport rep;
    rep.n = n;
    rep.reference = 1.0 / std::sqrt(static_cast<double>(n));
    rep.values.resize(cols, 0.0);
    const double dn = static_cast<double>(n);
    const double dy = static_cast<double>(sy) * (dn - static_cast<double>(sy));
    bool have_extreme = false;
    for (std::size_t j = 0; j < cols; ++j) {
        double r = 0.0;
        const double dx = static_cast<double>(sx[j]) * (dn - static_cast<double>(sx[j]));
        if (dx > 0.0 && dy > 0.0) {
            const double num =
                dn * static_cast<double>(cxy[j]) -
                static_cast<double>(sx[j]) * static_cast<double>(sy);
            r = num / std::sqrt(dx * dy);
        }
        rep.values[j] = r;
        if (!have_extreme) {
            rep.max_positive = rep.max_negative = r;
            have_extreme = true;
        } else {
            rep.max_positive = std::max(rep.max_positive, r);
            rep.max_negative = std::min(rep.max_negative, r);
        }
    }
    return rep;
}

} // namespace mqrng
