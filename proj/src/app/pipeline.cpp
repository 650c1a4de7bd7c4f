#include "quantcast/app/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "quantcast/app/fetch.hpp"
#include "quantcast/app/plot_data.hpp"
#include "quantcast/app/predictions_csv.hpp"
#include "quantcast/diagnostics/adf.hpp"
#include "quantcast/diagnostics/correlation.hpp"
#include "quantcast/error.hpp"
#include "quantcast/log.hpp"
#include "quantcast/neural/serialize.hpp"
#include "quantcast/neural/trainer.hpp"
#include "quantcast/walkforward/metrics.hpp"

namespace quantcast::app {

using nlohmann::json;
namespace wf = quantcast::walkforward;

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << text;
}

json adf_json(const diagnostics::AdfResult& r) {
    return {{"statistic", r.statistic},       {"p_value", r.p_value},
            {"lags_used", r.lags_used},       {"max_lag", r.max_lag},
            {"regression", to_string(r.regression)}, {"n_effective", r.n_effective},
            {"critical_values", {{"1%", r.critical_1pct}, {"5%", r.critical_5pct}, {"10%", r.critical_10pct}}}};
}

class Manifest {
public:
    Manifest(std::filesystem::path path, const AppConfig& config) : path_(std::move(path)) {
        doc_ = {{"config", to_json(config)}, {"started", utc_now()}, {"status", "running"},
                {"stages", json::array()}, {"artifacts", json::array()}};
        flush();
    }

    template <typename F>
    void stage(const std::string& name, F&& body) {
        json s = {{"name", name}, {"started", utc_now()}, {"status", "running"}};
        log::info("stage " + name);
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
        try {
            body();
        } catch (const std::exception& e) {
            s["finished"] = utc_now();
            s["seconds"] = elapsed();
            s["status"] = "failed";
            s["error"] = e.what();
            doc_["stages"].push_back(s);
            throw;
        }
        s["finished"] = utc_now();
        s["seconds"] = elapsed();
        s["status"] = "ok";
        doc_["stages"].push_back(s);
        flush();
    }

    void artifact(const std::filesystem::path& p) { doc_["artifacts"].push_back(p.filename().generic_string()); }

    void finish(bool ok, const std::string& error) {
        doc_["finished"] = utc_now();
        doc_["status"] = ok ? "ok" : "failed";
        if (!ok) doc_["error"] = error;
        flush();
    }

private:
    void flush() { write_text(path_, doc_.dump(2) + "\n"); }

    std::filesystem::path path_;
    json doc_;
};

}  // namespace

std::vector<OhlcvRow> ingest(const AppConfig& config) {
    std::vector<OhlcvRow> rows;
    if (config.data) {
        rows = load_csv(*config.data);
    } else {
        FetchOptions opts;
        opts.endpoint = config.endpoint;
        rows = fetch_cached(config.symbol, config.start, config.end, opts);
    }
    return filter_range(rows, config.start, config.end);
}

json diagnostics_json(const series::PriceSeries& s, int d, std::size_t max_lag) {
    const auto diff = series::difference(s.values(), d).values;
    const auto raw_adf = diagnostics::adf_test(s.values());
    const auto diff_adf = diagnostics::adf_test(diff);
    const std::size_t lag = std::min(max_lag, diff.size() - 1);
    const auto a = diagnostics::acf(diff, lag);
    const auto p = diagnostics::pacf(diff, lag);
    return {{"n", s.size()},
            {"differencing_order", d},
            {"adf_raw", adf_json(raw_adf)},
            {"adf_differenced", adf_json(diff_adf)},
            {"acf", {{"values", a.values}, {"conf_band", a.conf_band}}},
            {"pacf", {{"values", p.values}, {"conf_band", p.conf_band}}}};
}

std::string display_name(const std::string& key) {
    if (key == "arima-expanding") return "ARIMA with Expanding Window";
    if (key.rfind("arima-rolling:", 0) == 0) return "ARIMA with Rolling window of size " + key.substr(14);
    if (key.rfind("arima-garch-", 0) == 0) {
        const std::string policy = key.substr(12);
        return policy == "expanding" ? "ARIMA-GARCH" : "ARIMA-GARCH (" + policy + ")";
    }
    if (key == "lstm") return "LSTM";
    if (key == "mlp") return "MLP";
    return key;
}

std::string file_key(const std::string& key) {
    std::string out = key;
    for (char& c : out) {
        if (c == ':') c = '-';
    }
    return out;
}

std::vector<wf::ForecastRecord> neural_records(const std::string& model, std::span<const double> forecasts,
                                               const series::PriceSeries& full, std::size_t test_start) {
    if (test_start + forecasts.size() != full.size()) {
        throw InvalidArgument("neural_records: forecasts do not cover the test segment");
    }
    std::vector<wf::ForecastRecord> out;
    out.reserve(forecasts.size());
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
        wf::ForecastRecord r;
        r.date = full.dates()[test_start + i];
        r.actual = full.values()[test_start + i];
        r.predicted = forecasts[i];
        r.model = model;
        r.history_length = test_start + i;
        out.push_back(r);
    }
    return out;
}

wf::ComparisonTable write_report(const std::filesystem::path& dir, const std::vector<wf::EvalReport>& reports) {
    const auto table = wf::compare(reports);
    json models = json::object();
    json ranking = json::array();
    for (const auto& r : table.rows) {
        models[r.model_name] = {{"mae", r.mae}, {"rmse", r.rmse}, {"r_square", r.r_square}, {"n", r.n}};
        ranking.push_back(r.model_name);
    }
    write_text(dir / "report.json", json{{"models", models}, {"ranking", ranking}}.dump(2) + "\n");
    write_text(dir / "report.txt", table.to_text());
    return table;
}

PipelineResult run_pipeline(const AppConfig& config) {
    config.validate();
    PipelineResult result;
    result.run_dir = config.output_dir;
    std::filesystem::create_directories(config.output_dir);
    Manifest manifest(config.output_dir / "manifest.json", config);

    std::vector<ModelRecords> all_records;
    auto emit = [&](const std::string& key, const std::vector<wf::ForecastRecord>& records) {
        const auto path = config.output_dir / ("predictions_" + file_key(key) + ".csv");
        write_predictions(path, records);
        manifest.artifact(path);
        all_records.emplace_back(file_key(key), records);
        result.reports.push_back(wf::evaluate(display_name(key), wf::actuals(records), wf::predictions(records)));
    };
    auto check_complete = [](const wf::WalkForwardResult& r) {
        if (!r.complete) throw FitFailure("walk-forward incomplete: " + r.error);
    };

    try {
        std::optional<series::PriceSeries> prices;
        std::optional<series::SplitBounds> bounds;
        manifest.stage("ingest", [&] {
            prices = to_price_series(config.symbol, ingest(config));
            bounds = series::split_bounds(prices->size(), config.split);
            log::info("ingested " + std::to_string(prices->size()) + " rows; train " +
                      std::to_string(bounds->train_size()) + ", test " + std::to_string(bounds->test_size()));
        });
        const auto values = prices->values();
        const auto dates = prices->dates();
        // ARIMA models see train + validation as history; only the test segment is scored.
        const std::size_t test_start = bounds->validation_end;
        const auto history = values.first(test_start);
        const auto test = values.subspan(test_start);
        const auto test_dates = dates.subspan(test_start);

        manifest.stage("diagnostics", [&] {
            const auto path = config.output_dir / "diagnostics.json";
            write_text(path, diagnostics_json(prices->slice(0, bounds->train_end), config.arima.d).dump(2) + "\n");
            manifest.artifact(path);
        });

        wf::WalkForwardOptions wopts;
        wopts.d = config.arima.d;
        wopts.p_max = config.arima.p_max;
        wopts.q_max = config.arima.q_max;
        wopts.reselect_each_step = config.arima.reselect_each_step;

        std::optional<wf::WindowPolicy> best_policy;
        double best_rmse = 0.0;
        if (config.arima.enabled) {
            for (const auto& policy : config.arima.policies) {
                const std::string key = "arima-" + wf::to_string(policy);
                manifest.stage(key, [&] {
                    const auto r = wf::walkforward_arima(history, test, test_dates, policy, wopts);
                    if (!r.records.empty()) write_predictions(config.output_dir / ("predictions_" + file_key(key) + ".csv"), r.records);
                    check_complete(r);
                    emit(key, r.records);
                    if (!best_policy || result.reports.back().rmse < best_rmse) {
                        best_policy = policy;
                        best_rmse = result.reports.back().rmse;
                    }
                });
            }
        }

        if (config.arima_garch_enabled && best_policy) {
            const std::string key = "arima-garch-" + wf::to_string(*best_policy);
            manifest.stage(key, [&] {
                const auto r = wf::walkforward_arima_garch(history, test, test_dates, *best_policy, wopts);
                if (!r.records.empty()) write_predictions(config.output_dir / ("predictions_" + file_key(key) + ".csv"), r.records);
                check_complete(r);
                emit(key, r.records);
            });
        }

        const auto train_values = values.first(bounds->train_end);
        const auto validation_values = values.subspan(bounds->train_end, bounds->validation_size());
        auto run_net = [&](const std::string& key, const neural::NetConfig& net_config) {
            manifest.stage(key, [&] {
                const auto net = neural::train(net_config, train_values, validation_values, [&](int epoch, const neural::EpochLoss& l) {
                    log::debug(key + " epoch " + std::to_string(epoch + 1) + " loss " + std::to_string(l.train));
                });
                const auto model_path = config.output_dir / "models" / (key + ".json");
                write_text(model_path, neural::to_json(net).dump() + "\n");
                const auto forecasts = neural::predict_test(net, values, test_start);
                emit(key, neural_records(key, forecasts, *prices, test_start));
            });
        };
        if (config.lstm_enabled) {
            auto c = config.lstm;
            c.seed = config.seed;
            run_net("lstm", c);
        }
        if (config.mlp_enabled) {
            auto c = config.mlp;
            c.seed = config.seed;
            run_net("mlp", c);
        }

        if (result.reports.empty()) throw InvalidArgument("no models enabled");
        manifest.stage("report", [&] {
            for (const auto& p : emit_plot_data(config.output_dir / "plot", all_records)) manifest.artifact(p);
            result.table = write_report(config.output_dir, result.reports);
            manifest.artifact(config.output_dir / "report.json");
            manifest.artifact(config.output_dir / "report.txt");
        });
        result.ok = true;
        manifest.finish(true, "");
    } catch (const std::exception& e) {
        result.ok = false;
        result.error = e.what();
        log::error(std::string("pipeline failed: ") + e.what());
        manifest.finish(false, result.error);
    }
    return result;
}

}  // namespace quantcast::app
