#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quantcast/arima/arima.hpp"
#include "quantcast/garch/arima_garch.hpp"
#include "quantcast/series/date.hpp"
#include "quantcast/series/price_series.hpp"

namespace quantcast::walkforward {

struct WindowPolicy {
    enum class Kind { expanding, rolling };
    Kind kind = Kind::expanding;
    std::size_t size = 0;  // rolling only, in observations

    static WindowPolicy expanding() { return {}; }
    static WindowPolicy rolling(std::size_t size) { return {Kind::rolling, size}; }

    friend bool operator==(const WindowPolicy&, const WindowPolicy&) = default;
};

/// "expanding" or "rolling:N".
std::string to_string(const WindowPolicy& policy);
WindowPolicy window_policy_from_string(const std::string& text);

/// Largest p + q kept by the rolling-window cap p + q + 2 < size / 3.
int rolling_max_p_plus_q(std::size_t size);

struct ForecastRecord {
    Date date;
    double actual = 0.0;
    double predicted = 0.0;
    std::optional<arima::ArimaOrder> order;
    std::optional<double> aic;
    std::optional<double> variance_forecast;
    std::string model;
    std::size_t history_length = 0;
    std::string diagnostics;
};

struct WalkForwardOptions {
    int d = 1;
    int p_max = 4;
    int q_max = 4;
    /// Re-run the grid search at every step; otherwise the first step's order is reused.
    bool reselect_each_step = true;
    arima::ArimaFitOptions fit;
    garch::ArimaGarchOptions hybrid;
    std::function<void(std::size_t, const ForecastRecord&)> on_step;
};

struct WalkForwardResult {
    std::vector<ForecastRecord> records;
    /// False when a step failed; records then hold the steps completed before it.
    bool complete = true;
    std::string error;
};

/// One-step-ahead ARIMA forecasts over `test`. At each step the history is the training
/// data plus every test value already revealed (expanding) or its last `size` values
/// (rolling); the order is chosen by AIC grid search, the forecast recorded, then the
/// actual test value appended.
WalkForwardResult walkforward_arima(std::span<const double> train, std::span<const double> test,
                                    std::span<const Date> test_dates, const WindowPolicy& policy,
                                    const WalkForwardOptions& options = {});

/// Same protocol with a jointly estimated ARIMA-GARCH(1,1) at the grid-selected order.
/// Steps where the hybrid fit fails fall back to the plain ARIMA forecast and say so in
/// the record's diagnostics.
WalkForwardResult walkforward_arima_garch(std::span<const double> train, std::span<const double> test,
                                          std::span<const Date> test_dates, const WindowPolicy& policy,
                                          const WalkForwardOptions& options = {});

inline WalkForwardResult walkforward_arima(const series::PriceSeries& train, const series::PriceSeries& test,
                                           const WindowPolicy& policy, const WalkForwardOptions& options = {}) {
    return walkforward_arima(train.values(), test.values(), test.dates(), policy, options);
}

inline WalkForwardResult walkforward_arima_garch(const series::PriceSeries& train,
                                                 const series::PriceSeries& test, const WindowPolicy& policy,
                                                 const WalkForwardOptions& options = {}) {
    return walkforward_arima_garch(train.values(), test.values(), test.dates(), policy, options);
}

std::vector<double> actuals(std::span<const ForecastRecord> records);
std::vector<double> predictions(std::span<const ForecastRecord> records);

}  // namespace quantcast::walkforward
