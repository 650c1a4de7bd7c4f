#include "quantcast/diagnostics/correlation.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "quantcast/error.hpp"

namespace quantcast::diagnostics {

namespace {

void check_lag(std::size_t n, std::size_t max_lag) {
    if (max_lag < 1 || n <= max_lag) {
        throw InvalidArgument("acf: need n > max_lag >= 1 (n=" + std::to_string(n) +
                              ", max_lag=" + std::to_string(max_lag) + ")");
    }
}

}  // namespace

AcfResult acf(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    check_lag(n, max_lag);
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);

    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = values[i] - mean;

    double c0 = 0.0;
    for (double x : centered) c0 += x * x;
    if (!(c0 > 0.0)) throw InvalidArgument("acf: constant series has undefined autocorrelation");

    AcfResult out;
    out.n = n;
    out.conf_band = 1.96 / std::sqrt(static_cast<double>(n));
    out.values.assign(max_lag + 1, 0.0);
    out.values[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < n; ++t) ck += centered[t] * centered[t - k];
        out.values[k] = ck / c0;
    }
    return out;
}

std::vector<double> durbin_levinson(std::span<const double> rho) {
    const std::size_t K = rho.size() - 1;
    std::vector<double> partial(K + 1, 0.0);
    partial[0] = 1.0;
    std::vector<double> phi(K + 1, 0.0), prev(K + 1, 0.0);
    double v = 1.0;
    for (std::size_t k = 1; k <= K; ++k) {
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        const double a = (v > 0.0) ? num / v : 0.0;
        phi[k] = a;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - a * prev[k - j];
        v *= (1.0 - a * a);
        partial[k] = a;
        prev = phi;
    }
    return partial;
}

AcfResult pacf(std::span<const double> values, std::size_t max_lag) {
    AcfResult r = acf(values, max_lag);
    r.values = durbin_levinson(r.values);
    return r;
}

}  // namespace quantcast::diagnostics
