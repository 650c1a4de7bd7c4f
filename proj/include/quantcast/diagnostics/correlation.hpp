#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace quantcast::diagnostics {

/// Correlogram over lags 0..max_lag. `values[0]` is exactly 1 for the ACF and for the
/// PACF by convention.
struct AcfResult {
    std::vector<double> values;
    std::size_t n = 0;
    double conf_band = 0.0;  // 1.96 / sqrt(n)

    std::size_t max_lag() const { return values.empty() ? 0 : values.size() - 1; }
};

/// Sample autocorrelation with the biased (divisor n) autocovariance estimator.
AcfResult acf(std::span<const double> values, std::size_t max_lag);

/// Partial autocorrelation via the Durbin-Levinson recursion on the sample ACF.
AcfResult pacf(std::span<const double> values, std::size_t max_lag);

/// Durbin-Levinson on an autocorrelation sequence rho[0..K]; returns partials [1, pacf(1..K)].
std::vector<double> durbin_levinson(std::span<const double> rho);

}  // namespace quantcast::diagnostics
