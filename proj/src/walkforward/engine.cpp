#include "quantcast/walkforward/engine.hpp"

#include <charconv>
#include <cmath>

#include "quantcast/error.hpp"
#include "quantcast/log.hpp"

namespace quantcast::walkforward {

std::string to_string(const WindowPolicy& policy) {
    if (policy.kind == WindowPolicy::Kind::expanding) return "expanding";
    return "rolling:" + std::to_string(policy.size);
}

WindowPolicy window_policy_from_string(const std::string& text) {
    if (text == "expanding") return WindowPolicy::expanding();
    const std::string prefix = "rolling:";
    if (text.rfind(prefix, 0) == 0) {
        std::size_t size = 0;
        const char* first = text.data() + prefix.size();
        const char* last = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(first, last, size);
        if (ec == std::errc{} && ptr == last && size > 0) return WindowPolicy::rolling(size);
    }
    throw InvalidArgument("window policy must be 'expanding' or 'rolling:N', got '" + text + "'");
}

int rolling_max_p_plus_q(std::size_t size) {
    // largest k with k + 2 < size / 3
    return static_cast<int>(std::ceil(static_cast<double>(size) / 3.0)) - 3;
}

std::vector<double> actuals(std::span<const ForecastRecord> records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.actual);
    return out;
}

std::vector<double> predictions(std::span<const ForecastRecord> records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.predicted);
    return out;
}

namespace {

enum class Engine { arima, hybrid };

void validate(std::span<const double> train, std::span<const double> test, std::span<const Date> dates,
              const WindowPolicy& policy, const WalkForwardOptions& options) {
    if (dates.size() != test.size()) throw InvalidArgument("walkforward: test dates and values differ in length");
    if (options.p_max < 0 || options.q_max < 0) throw InvalidArgument("walkforward: negative order bound");
    if (policy.kind == WindowPolicy::Kind::rolling) {
        if (policy.size == 0) throw InvalidArgument("walkforward: rolling window size must be positive");
        if (train.size() < policy.size) {
            throw InsufficientData("walkforward: training data shorter than the rolling window");
        }
        if (rolling_max_p_plus_q(policy.size) < 0) {
            throw InvalidArgument("walkforward: rolling window too small for any candidate order");
        }
    } else if (train.size() < static_cast<std::size_t>(options.d + 3)) {
        throw InsufficientData("walkforward: training data too short");
    }
}

WalkForwardResult run(Engine engine, std::span<const double> train, std::span<const double> test,
                      std::span<const Date> dates, const WindowPolicy& policy, const WalkForwardOptions& options) {
    validate(train, test, dates, policy, options);

    arima::GridSearchOptions grid;
    grid.fit = options.fit;
    if (policy.kind == WindowPolicy::Kind::rolling) grid.max_p_plus_q = rolling_max_p_plus_q(policy.size);

    const std::string tag = (engine == Engine::arima ? "arima-" : "arima-garch-") + to_string(policy);
    std::vector<double> data(train.begin(), train.end());
    data.reserve(train.size() + test.size());

    WalkForwardResult result;
    result.records.reserve(test.size());
    std::optional<arima::ArimaOrder> fixed_order;

    for (std::size_t k = 0; k < test.size(); ++k) {
        std::span<const double> history(data);
        if (policy.kind == WindowPolicy::Kind::rolling) history = history.last(policy.size);
        if (policy.kind == WindowPolicy::Kind::rolling && history.size() != policy.size) {
            throw InvalidState("walkforward: rolling history has the wrong length");
        }

        ForecastRecord rec;
        rec.date = dates[k];
        rec.actual = test[k];
        rec.model = tag;
        rec.history_length = history.size();
        try {
            arima::ArimaModel model;
            if (fixed_order) {
                model = arima::fit(history, *fixed_order, options.fit);
            } else {
                model = arima::grid_search(history, options.d, options.p_max, options.q_max, grid).model;
                if (!options.reselect_each_step) fixed_order = model.order;
            }
            rec.order = model.order;

            if (engine == Engine::arima) {
                rec.predicted = arima::forecast_one(model, history);
                rec.aic = model.aic;
            } else {
                try {
                    const auto hybrid = garch::fit_arima_garch(history, model, options.hybrid);
                    const auto f = garch::forecast_one_hybrid(hybrid, history);
                    rec.predicted = f.price;
                    rec.variance_forecast = f.variance;
                    rec.aic = hybrid.aic;
                    rec.diagnostics = hybrid.diagnostics;
                } catch (const std::exception& e) {
                    rec.predicted = arima::forecast_one(model, history);
                    rec.variance_forecast = model.sigma2;
                    rec.aic = model.aic;
                    rec.diagnostics = std::string("hybrid fit failed, plain ARIMA forecast used: ") + e.what();
                    log::warning("walkforward step " + std::to_string(k) + ": " + rec.diagnostics);
                }
            }
            if (!std::isfinite(rec.predicted)) throw FitFailure("non-finite forecast");
        } catch (const std::exception& e) {
            result.complete = false;
            result.error = "step " + std::to_string(k) + " (" + format_date(dates[k]) + "): " + e.what();
            log::error("walkforward " + tag + " aborted at " + result.error);
            return result;
        }

        result.records.push_back(rec);
        if (options.on_step) options.on_step(k, result.records.back());
        data.push_back(test[k]);
    }
    return result;
}

}  // namespace

WalkForwardResult walkforward_arima(std::span<const double> train, std::span<const double> test,
                                    std::span<const Date> test_dates, const WindowPolicy& policy,
                                    const WalkForwardOptions& options) {
    return run(Engine::arima, train, test, test_dates, policy, options);
}

WalkForwardResult walkforward_arima_garch(std::span<const double> train, std::span<const double> test,
                                          std::span<const Date> test_dates, const WindowPolicy& policy,
                                          const WalkForwardOptions& options) {
    return run(Engine::hybrid, train, test, test_dates, policy, options);
}

}  // namespace quantcast::walkforward
