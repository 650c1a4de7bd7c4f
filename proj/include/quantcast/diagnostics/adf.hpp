#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace quantcast::diagnostics {

enum class AdfRegression { none, constant, constant_trend };

std::string to_string(AdfRegression r);
AdfRegression adf_regression_from_string(const std::string& s);

struct AdfResult {
    double statistic = 0.0;  // t-ratio of the lagged-level coefficient
    double p_value = 1.0;
    int lags_used = 0;
    int max_lag = 0;  // upper bound searched (== lags_used when the lag is fixed)
    AdfRegression regression = AdfRegression::constant;
    std::size_t n_effective = 0;
    double critical_1pct = 0.0;
    double critical_5pct = 0.0;
    double critical_10pct = 0.0;
};

/// Augmented Dickey-Fuller test.
///
///   dy_t = a [+ b t] + rho y_{t-1} + sum_{i=1..k} c_i dy_{t-i} + e_t
///
/// With `lags` unset, k is chosen by minimum AIC over 0..schwert_max_lag(n) fitted on
/// a common sample, then the chosen lag is refitted on all usable observations.
AdfResult adf_test(std::span<const double> values,
                   AdfRegression regression = AdfRegression::constant,
                   std::optional<int> lags = std::nullopt);

/// floor(12 (n/100)^(1/4)).
int schwert_max_lag(std::size_t n);

/// Asymptotic p-value of a Dickey-Fuller tau statistic (probit response surface).
double adf_p_value(double tau, AdfRegression regression);

/// Finite-sample critical value for `level` in {0.01, 0.05, 0.10} with `nobs` regression
/// observations (response-surface in 1/T).
double adf_critical_value(AdfRegression regression, double level, std::size_t nobs);

}  // namespace quantcast::diagnostics
