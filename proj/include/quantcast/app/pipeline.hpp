#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quantcast/app/config.hpp"
#include "quantcast/app/ohlcv.hpp"
#include "quantcast/walkforward/engine.hpp"
#include "quantcast/walkforward/report.hpp"

namespace quantcast::app {

/// Rows for the configured symbol and date range, from `config.data` when set, otherwise
/// from the cache or the remote endpoint.
std::vector<OhlcvRow> ingest(const AppConfig& config);

/// ADF (constant regression, AIC lag choice) on the raw and differenced series plus
/// ACF and PACF of the differenced series up to `max_lag`.
nlohmann::json diagnostics_json(const series::PriceSeries& series, int d = 1, std::size_t max_lag = 40);

/// Display name used in tables ("ARIMA with Expanding Window", "LSTM", ...).
std::string display_name(const std::string& model_key);

/// Filesystem-safe model key ("arima-rolling-30").
std::string file_key(const std::string& model_key);

/// Neural one-step forecasts over the test segment as records tagged `model`.
std::vector<walkforward::ForecastRecord> neural_records(const std::string& model, std::span<const double> forecasts,
                                                        const series::PriceSeries& full, std::size_t test_start);

struct PipelineResult {
    bool ok = false;
    std::string error;
    std::filesystem::path run_dir;
    std::vector<walkforward::EvalReport> reports;
    std::optional<walkforward::ComparisonTable> table;
};

/// Ingest, diagnostics, ARIMA walk-forward per policy, ARIMA-GARCH on the best policy by
/// RMSE, LSTM and MLP, metrics and comparison. Artifacts go to config.output_dir together
/// with manifest.json, which records stage timings and is rewritten (marked failed) when a
/// stage throws.
PipelineResult run_pipeline(const AppConfig& config);

/// Writes report.json and report.txt for `reports` into `dir`.
walkforward::ComparisonTable write_report(const std::filesystem::path& dir,
                                          const std::vector<walkforward::EvalReport>& reports);

}  // namespace quantcast::app
