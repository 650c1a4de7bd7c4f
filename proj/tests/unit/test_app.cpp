#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "quantcast/app/config.hpp"
#include "quantcast/app/fetch.hpp"
#include "quantcast/app/ohlcv.hpp"
#include "quantcast/app/pipeline.hpp"
#include "quantcast/app/plot_data.hpp"
#include "quantcast/app/predictions_csv.hpp"
#include "quantcast/error.hpp"
#include "quantcast/log.hpp"
#include "support/simulate.hpp"

using namespace quantcast;
using namespace quantcast::app;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = QUANTCAST_FIXTURES;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("quantcast_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Date ymd(int y, unsigned m, unsigned d) { return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}; }

/// Serves the chart fixture on a loopback port; the first `failures` requests get HTTP 503.
struct ChartServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;
    std::atomic<int> requests{0};
    int failures = 0;
    std::string last_query;

    explicit ChartServer(int fail_first = 0) : failures(fail_first) {
        const std::string body = slurp(kFixtures / "chart_nvda_sample.json");
        server.Get(R"(/v8/finance/chart/(\w+))", [this, body](const httplib::Request& req, httplib::Response& res) {
            last_query = req.get_param_value("period1") + ".." + req.get_param_value("period2");
            if (requests++ < failures) {
                res.status = 503;
                return;
            }
            res.set_content(body, "application/json");
        });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~ChartServer() {
        server.stop();
        thread.join();
    }
    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port); }
};

std::vector<OhlcvRow> synthetic_rows(std::size_t n, std::uint64_t seed) {
    const auto prices = testing::gbm_prices(n, seed);
    const auto dates = testing::trading_dates(n);
    std::vector<OhlcvRow> rows;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = prices[i];
        rows.push_back(round_to_csv_precision({dates[i], p, p * 1.01, p * 0.99, p, p, 1000000 + static_cast<std::int64_t>(i)}));
    }
    return rows;
}

AppConfig small_config(const fs::path& data, const fs::path& out) {
    AppConfig c;
    c.symbol = "SYN";
    c.start = ymd(2019, 4, 12);
    c.end = ymd(2020, 12, 31);
    c.data = data;
    c.output_dir = out;
    c.arima.p_max = 1;
    c.arima.q_max = 1;
    c.arima.policies = {walkforward::WindowPolicy::expanding(), walkforward::WindowPolicy::rolling(30)};
    c.lstm.hidden_units = 4;
    c.lstm.epochs = 3;
    c.mlp.hidden_units = 4;
    c.mlp.epochs = 3;
    c.split = {0.8, 0.1, 0.1};
    return c;
}

}  // namespace

TEST_CASE("csv fixture loads sorted") {
    const auto rows = load_csv(kFixtures / "ohlcv_small.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].date == ymd(2019, 4, 12));
    CHECK(rows[0].open == 45.123457);
    CHECK(rows[2].volume == 40500000);
}

TEST_CASE("csv round trip is identity") {
    const auto rows = synthetic_rows(50, 1);
    std::stringstream first;
    write_csv(first, rows);
    CHECK(first.str().rfind(std::string(kOhlcvHeader) + "\n", 0) == 0);
    std::stringstream in(first.str());
    const auto back = parse_csv(in);
    CHECK(back == rows);
    std::stringstream second;
    write_csv(second, back);
    CHECK(second.str() == first.str());
}

TEST_CASE("csv errors name the line") {
    const std::string header = std::string(kOhlcvHeader) + "\n";
    auto parse = [](const std::string& text) {
        std::stringstream in(text);
        return parse_csv(in, "t.csv");
    };
    try {
        parse(header + "2019-04-12,1,2,0.5,1,1,10\n2019-04-15,1,2,zz,1,1,10\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    try {
        parse(header + "2019-04-12,1,2,0.5,-1,1,10\n");
        FAIL("expected DataIntegrityError");
    } catch (const DataIntegrityError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse(header + "2019-04-12,1,2,0.5,1,1,10\n2019-04-12,1,2,0.5,1,1,10\n"), DataIntegrityError);
    CHECK_THROWS_AS(parse("date,open\n"), ParseError);
    CHECK_THROWS_AS(parse(header + "2019-13-01,1,2,0.5,1,1,10\n"), ParseError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), ParseError);

    const auto empty = parse(header);
    CHECK(empty.empty());
    CHECK_THROWS(to_price_series("X", empty));
}

TEST_CASE("filter_range and price series") {
    const auto rows = synthetic_rows(20, 2);
    const auto some = filter_range(rows, rows[3].date, rows[7].date);
    CHECK(some.size() == 5);
    CHECK(filter_range(rows, rows[7].date, rows[3].date).empty());
    const auto s = to_price_series("SYN", rows);
    CHECK(s.size() == 20);
    CHECK(s.values()[4] == rows[4].adj_close);
}

TEST_CASE("chart json drops null bars and applies the exchange offset") {
    const auto rows = parse_chart_json(slurp(kFixtures / "chart_nvda_sample.json"));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].date == ymd(2019, 4, 12));
    CHECK(rows[0].open == 45.123457);
    for (const auto& r : rows) CHECK(r.date != ymd(2019, 4, 17));
    CHECK_THROWS_AS(parse_chart_json("{\"chart\":{\"result\":[{\"meta\":{}}]}}"), ParseError);
    try {
        parse_chart_json(R"({"chart":{"result":[{"meta":{"gmtoffset":0},"timestamp":[1],"indicators":{"quote":[{"open":[1]}],"adjclose":[{"adjclose":[1]}]}}]}})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("high") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_chart_json("not json"), ParseError);
}

TEST_CASE("fetch_remote retries with doubling backoff") {
    log::set_level(log::Level::off);
    ChartServer server(2);
    std::vector<std::chrono::milliseconds> sleeps;
    FetchOptions o;
    o.endpoint = server.endpoint();
    o.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
    const auto rows = fetch_remote("NVDA", ymd(2019, 4, 12), ymd(2019, 4, 22), o);
    CHECK(rows.size() == 6);
    CHECK(server.requests == 3);
    REQUIRE(sleeps.size() == 2);
    CHECK(sleeps[0] == std::chrono::milliseconds(1000));
    CHECK(sleeps[1] == std::chrono::milliseconds(2000));
    CHECK(server.last_query == "1555027200..1555977600");
}

TEST_CASE("fetch_remote gives up after the last attempt") {
    ChartServer server(10);
    FetchOptions o;
    o.endpoint = server.endpoint();
    int sleeps = 0;
    o.sleep = [&](std::chrono::milliseconds) { ++sleeps; };
    CHECK_THROWS_AS(fetch_remote("NVDA", ymd(2019, 4, 12), ymd(2019, 4, 22), o), TransportError);
    CHECK(server.requests == 3);
    CHECK(sleeps == 2);
}

TEST_CASE("empty range needs no request") {
    FetchOptions o;
    o.endpoint = "http://127.0.0.1:1";
    CHECK(fetch_remote("NVDA", ymd(2020, 1, 2), ymd(2020, 1, 1), o).empty());
}

TEST_CASE("fetch, cache and reload agree") {
    TempDir dir;
    ChartServer server;
    FetchOptions o;
    o.endpoint = server.endpoint();
    o.cache_file = dir.path / "nvda.csv";
    const auto fetched = fetch_cached("NVDA", ymd(2019, 4, 12), ymd(2019, 4, 18), o);
    CHECK(fetched.size() == 4);
    CHECK(load_csv(*o.cache_file) == fetched);
    CHECK(to_price_series("NVDA", load_csv(*o.cache_file)).values()[3] == to_price_series("NVDA", fetched).values()[3]);
    const auto again = fetch_cached("NVDA", ymd(2019, 4, 12), ymd(2019, 4, 18), o);
    CHECK(again == fetched);
    CHECK(server.requests == 1);
}

TEST_CASE("cache location honours the environment") {
    ::setenv("QUANTCAST_CACHE_DIR", "/tmp/qc-cache", 1);
    CHECK(cache_file_for("NVDA", ymd(2019, 4, 12), ymd(2024, 4, 11)) ==
          fs::path("/tmp/qc-cache/NVDA_2019-04-12_2024-04-11.csv"));
    ::unsetenv("QUANTCAST_CACHE_DIR");
}

TEST_CASE("config json") {
    const AppConfig defaults;
    CHECK(defaults.split.train_fraction == 0.9);
    CHECK(defaults.arima.policies.size() == 3);
    const auto j = to_json(defaults);
    const auto back = config_from_json(j);
    CHECK(to_json(back) == j);

    const auto partial = config_from_json(nlohmann::json::parse(
        R"({"symbol":"AMD","arima":{"policies":["rolling:45"]},"lstm":{"epochs":7},"seed":9})"));
    CHECK(partial.symbol == "AMD");
    CHECK(partial.arima.policies == std::vector{walkforward::WindowPolicy::rolling(45)});
    CHECK(partial.lstm.epochs == 7);
    CHECK(partial.lstm.hidden_units == 297);
    CHECK(partial.seed == 9);

    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"sybmol":"AMD"})")), ParseError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(
                        R"({"date_range":{"start":"2024-01-01","end":"2023-01-01"}})")),
                    InvalidArgument);
}

TEST_CASE("prediction csv round trip") {
    std::vector<walkforward::ForecastRecord> recs(3);
    const auto dates = testing::trading_dates(3);
    for (std::size_t i = 0; i < 3; ++i) {
        recs[i].date = dates[i];
        recs[i].actual = 100.0 / 3.0 + static_cast<double>(i);
        recs[i].predicted = 0.1 + 0.2 * static_cast<double>(i);
        recs[i].model = "m";
    }
    recs[0].order = arima::ArimaOrder{2, 1, 1};
    recs[0].aic = -1234.5678901234;
    recs[0].variance_forecast = 1e-7;
    std::stringstream out;
    write_predictions(out, recs);
    std::stringstream in(out.str());
    const auto back = read_predictions(in, "m");
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].date == recs[i].date);
        CHECK(back[i].actual == recs[i].actual);
        CHECK(back[i].predicted == recs[i].predicted);
        CHECK(back[i].order == recs[i].order);
        CHECK(back[i].aic == recs[i].aic);
        CHECK(back[i].variance_forecast == recs[i].variance_forecast);
    }
    std::stringstream again;
    write_predictions(again, back);
    CHECK(again.str() == out.str());
    CHECK(out.str().rfind(std::string(kPredictionsHeader), 0) == 0);
    CHECK(out.str().find(",,,,") != std::string::npos);
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("plot data") {
    TempDir dir;
    std::vector<walkforward::ForecastRecord> a(126), b(126);
    const auto dates = testing::trading_dates(126);
    for (std::size_t i = 0; i < 126; ++i) {
        a[i].date = b[i].date = dates[i];
        a[i].actual = b[i].actual = static_cast<double>(i);
        a[i].predicted = static_cast<double>(i) + 0.5;
        b[i].predicted = static_cast<double>(i) - 0.5;
    }
    const auto paths = emit_plot_data(dir.path, {{"arima-expanding", a}, {"lstm", b}, {"none", {}}});
    CHECK(line_count(dir.path / "plot_arima-expanding.csv") == 127);
    CHECK(line_count(dir.path / "plot_lstm.csv") == 127);
    CHECK(slurp(dir.path / "plot_none.csv") == "date,actual,predicted\n");
    CHECK(line_count(dir.path / "plot_merged.csv") == 127);
    std::ifstream merged(dir.path / "plot_merged.csv");
    std::string header;
    std::getline(merged, header);
    CHECK(header == "date,actual,arima-expanding,lstm,none");
    CHECK(paths.size() == 4);
}

TEST_CASE("display names") {
    CHECK(display_name("arima-expanding") == "ARIMA with Expanding Window");
    CHECK(display_name("arima-rolling:30") == "ARIMA with Rolling window of size 30");
    CHECK(display_name("lstm") == "LSTM");
    CHECK(file_key("arima-rolling:60") == "arima-rolling-60");
}

TEST_CASE("pipeline runs end to end and is reproducible") {
    log::set_level(log::Level::warning);
    TempDir dir;
    const auto csv = dir.path / "syn.csv";
    write_csv(csv, synthetic_rows(160, 3));
    const auto c1 = small_config(csv, dir.path / "run1");
    const auto r1 = run_pipeline(c1);
    REQUIRE_MESSAGE(r1.ok, r1.error);
    REQUIRE(r1.table.has_value());
    CHECK(r1.table->rows.size() == 5);
    for (const auto& r : r1.reports) {
        CHECK(r.n == 16);
        CHECK(r.rmse >= r.mae);
    }
    for (const char* f : {"manifest.json", "diagnostics.json", "report.json", "report.txt",
                          "predictions_arima-expanding.csv", "predictions_arima-rolling-30.csv", "predictions_lstm.csv",
                          "predictions_mlp.csv", "models/lstm.json", "plot/plot_merged.csv"}) {
        CHECK_MESSAGE(fs::exists(c1.output_dir / f), f);
    }
    const auto diag = nlohmann::json::parse(slurp(c1.output_dir / "diagnostics.json"));
    CHECK(diag.contains("adf_raw"));

    auto c2 = c1;
    c2.output_dir = dir.path / "run2";
    REQUIRE(run_pipeline(c2).ok);
    for (const auto& entry : fs::recursive_directory_iterator(c1.output_dir)) {
        if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
        const auto rel = fs::relative(entry.path(), c1.output_dir);
        CHECK_MESSAGE(slurp(entry.path()) == slurp(c2.output_dir / rel), rel.string());
    }

    auto only = c1;
    only.output_dir = dir.path / "run3";
    only.arima.policies = {walkforward::WindowPolicy::expanding()};
    only.arima_garch_enabled = only.lstm_enabled = only.mlp_enabled = false;
    const auto r3 = run_pipeline(only);
    REQUIRE(r3.ok);
    CHECK(r3.table->rows.size() == 1);
}

TEST_CASE("pipeline failure leaves a failed manifest") {
    TempDir dir;
    auto c = small_config(dir.path / "missing.csv", dir.path / "run");
    const auto r = run_pipeline(c);
    CHECK_FALSE(r.ok);
    const auto manifest = nlohmann::json::parse(slurp(c.output_dir / "manifest.json"));
    CHECK(manifest.dump().find("fail") != std::string::npos);
}

TEST_CASE("shipped configs load") {
    const fs::path configs = kFixtures.parent_path().parent_path() / "configs";
    CHECK(to_json(load_config(configs / "default.json")) == to_json(AppConfig{}));
    const auto quick = load_config(configs / "quick.json");
    CHECK(quick.arima.p_max == 2);
    CHECK(quick.lstm.hidden_units == 32);
}
