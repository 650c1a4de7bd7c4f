#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "quantcast/app/config.hpp"
#include "quantcast/app/fetch.hpp"
#include "quantcast/app/pipeline.hpp"
#include "quantcast/app/predictions_csv.hpp"
#include "quantcast/error.hpp"
#include "quantcast/log.hpp"
#include "quantcast/neural/serialize.hpp"
#include "quantcast/neural/trainer.hpp"
#include "quantcast/walkforward/metrics.hpp"

namespace qc = quantcast;
namespace wf = quantcast::walkforward;

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<std::string> data;
    std::string log_level = "info";
};

qc::Date date_arg(const std::string& text) {
    const auto d = qc::parse_date(text);
    if (!d) throw qc::InvalidArgument("bad date '" + text + "', expected YYYY-MM-DD");
    return *d;
}

qc::log::Level level_from(const std::string& s) {
    if (s == "debug") return qc::log::Level::debug;
    if (s == "info") return qc::log::Level::info;
    if (s == "warning") return qc::log::Level::warning;
    if (s == "error") return qc::log::Level::error;
    if (s == "off") return qc::log::Level::off;
    throw qc::InvalidArgument("unknown log level " + s);
}

qc::app::AppConfig base_config(const Globals& g, const std::optional<std::string>& config_path) {
    qc::app::AppConfig c = config_path ? qc::app::load_config(*config_path) : qc::app::AppConfig{};
    if (g.seed) c.seed = *g.seed;
    if (g.output_dir) c.output_dir = *g.output_dir;
    if (g.data) c.data = *g.data;
    c.lstm.seed = c.seed;
    c.mlp.seed = c.seed;
    return c;
}

void print_report(const wf::EvalReport& r) {
    std::cout << r.model_name << ": MAE " << wf::format_metric(r.mae) << "  RMSE " << wf::format_metric(r.rmse)
              << "  R Square " << wf::format_metric(r.r_square) << "  n " << r.n << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantcast: next-day price forecasting with ARIMA, ARIMA-GARCH, LSTM and MLP"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for the neural networks");
    app.add_option("--output-dir", g.output_dir, "Directory for artifacts");
    app.add_option("--data", g.data, "OHLCV CSV to use instead of fetching");
    app.add_option("--log-level", g.log_level, "debug, info, warning, error or off");

    std::optional<std::string> config_path;

    auto* fetch = app.add_subcommand("fetch", "Download daily bars and write them as CSV");
    std::string symbol = "NVDA", start = "2019-04-12", end = "2024-04-11", endpoint = qc::app::kDefaultEndpoint;
    fetch->add_option("--symbol", symbol);
    fetch->add_option("--start", start);
    fetch->add_option("--end", end);
    fetch->add_option("--endpoint", endpoint);

    auto* diagnose = app.add_subcommand("diagnose", "ADF, ACF and PACF of the adjusted close");
    std::optional<std::string> input;
    diagnose->add_option("--input", input, "OHLCV CSV (defaults to --data)");
    std::size_t max_lag = 40;
    diagnose->add_option("--max-lag", max_lag);

    auto* backtest = app.add_subcommand("backtest", "Walk-forward ARIMA or ARIMA-GARCH on the test split");
    std::string bt_model = "arima", window = "expanding";
    backtest->add_option("--model", bt_model)->check(CLI::IsMember({"arima", "arima-garch"}));
    backtest->add_option("--window", window, "expanding or rolling:N");
    backtest->add_option("--config", config_path);

    auto* train = app.add_subcommand("train", "Train a network and forecast the test split");
    std::string net_model = "lstm";
    std::optional<int> epochs;
    train->add_option("--model", net_model)->check(CLI::IsMember({"lstm", "mlp"}));
    train->add_option("--epochs", epochs, "Override the configured epoch count");
    train->add_option("--config", config_path);

    auto* run = app.add_subcommand("run", "Full experiment from a JSON config");
    run->add_option("--config", config_path);

    auto* report = app.add_subcommand("report", "Recompute the comparison table from a run directory");
    std::string run_dir;
    report->add_option("--run-dir", run_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        qc::log::set_level(level_from(g.log_level));

        if (fetch->parsed()) {
            qc::app::FetchOptions opts;
            opts.endpoint = endpoint;
            const auto s = date_arg(start), e = date_arg(end);
            opts.cache_file = g.output_dir ? std::filesystem::path(*g.output_dir) / (symbol + ".csv")
                                           : qc::app::cache_file_for(symbol, s, e);
            const auto rows = qc::app::fetch_remote(symbol, s, e, opts);
            std::cout << rows.size() << " rows written to " << opts.cache_file->string() << '\n';
            return 0;
        }

        if (diagnose->parsed()) {
            const auto path = input ? input : g.data;
            if (!path) throw qc::InvalidArgument("diagnose needs --input or --data");
            const auto series = qc::app::to_price_series("input", qc::app::load_csv(*path));
            std::cout << qc::app::diagnostics_json(series, 1, max_lag).dump(2) << '\n';
            return 0;
        }

        if (report->parsed()) {
            std::vector<wf::EvalReport> reports;
            for (const auto& entry : std::filesystem::directory_iterator(run_dir)) {
                const std::string name = entry.path().filename().string();
                if (name.rfind("predictions_", 0) != 0 || entry.path().extension() != ".csv") continue;
                const std::string key = entry.path().stem().string().substr(12);
                const auto records = qc::app::read_predictions(entry.path(), key);
                reports.push_back(wf::evaluate(key, wf::actuals(records), wf::predictions(records)));
            }
            if (reports.empty()) throw qc::InvalidArgument("no predictions_*.csv in " + run_dir);
            std::cout << wf::compare(reports).to_text();
            return 0;
        }

        const auto config = base_config(g, config_path);

        if (run->parsed()) {
            const auto result = qc::app::run_pipeline(config);
            if (!result.ok) {
                std::cerr << "run failed: " << result.error << '\n';
                return 1;
            }
            std::cout << result.table->to_text();
            return 0;
        }

        const auto prices = qc::app::to_price_series(config.symbol, qc::app::ingest(config));
        const auto bounds = qc::series::split_bounds(prices.size(), config.split);
        const auto values = prices.values();
        const std::size_t test_start = bounds.validation_end;
        std::filesystem::create_directories(config.output_dir);

        if (backtest->parsed()) {
            const auto policy = wf::window_policy_from_string(window);
            wf::WalkForwardOptions opts;
            opts.d = config.arima.d;
            opts.p_max = config.arima.p_max;
            opts.q_max = config.arima.q_max;
            opts.reselect_each_step = config.arima.reselect_each_step;
            opts.on_step = [&](std::size_t k, const wf::ForecastRecord& r) {
                qc::log::debug("step " + std::to_string(k + 1) + " " + qc::format_date(r.date) + " predicted " +
                               std::to_string(r.predicted));
            };
            const auto test = values.subspan(test_start);
            const auto dates = prices.dates().subspan(test_start);
            const auto result = bt_model == "arima"
                                    ? wf::walkforward_arima(values.first(test_start), test, dates, policy, opts)
                                    : wf::walkforward_arima_garch(values.first(test_start), test, dates, policy, opts);
            const std::string key = bt_model + "-" + wf::to_string(policy);
            const auto path = config.output_dir / ("predictions_" + qc::app::file_key(key) + ".csv");
            qc::app::write_predictions(path, result.records);
            if (!result.complete) {
                std::cerr << "backtest stopped early: " << result.error << " (" << result.records.size()
                          << " records written to " << path.string() << ")\n";
                return 1;
            }
            print_report(wf::evaluate(qc::app::display_name(key), wf::actuals(result.records),
                                      wf::predictions(result.records)));
            return 0;
        }

        if (train->parsed()) {
            qc::neural::NetConfig net_config;
            if (net_model == "lstm") {
                auto c = config.lstm;
                if (epochs) c.epochs = *epochs;
                net_config = c;
            } else {
                auto c = config.mlp;
                if (epochs) c.epochs = *epochs;
                net_config = c;
            }
            const auto net = qc::neural::train(net_config, values.first(bounds.train_end),
                                               values.subspan(bounds.train_end, bounds.validation_size()),
                                               [](int epoch, const qc::neural::EpochLoss& l) {
                                                   qc::log::debug("epoch " + std::to_string(epoch + 1) + " loss " +
                                                                  std::to_string(l.train));
                                               });
            std::ofstream(config.output_dir / (net_model + ".json")) << qc::neural::to_json(net).dump() << '\n';
            const auto records = qc::app::neural_records(net_model, qc::neural::predict_test(net, values, test_start),
                                                         prices, test_start);
            qc::app::write_predictions(config.output_dir / ("predictions_" + net_model + ".csv"), records);
            print_report(wf::evaluate(qc::app::display_name(net_model), wf::actuals(records), wf::predictions(records)));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
