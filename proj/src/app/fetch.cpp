#include "quantcast/app/fetch.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "quantcast/error.hpp"
#include "quantcast/log.hpp"

namespace quantcast::app {

using nlohmann::json;

std::filesystem::path cache_dir() {
    if (const char* env = std::getenv("QUANTCAST_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "quantcast";
    return ".quantcast-cache";
}

std::filesystem::path cache_file_for(const std::string& symbol, const Date& start, const Date& end) {
    return cache_dir() / (symbol + "_" + format_date(start) + "_" + format_date(end) + ".csv");
}

namespace {

const json& require(const json& parent, const char* key, const std::string& path) {
    if (!parent.is_object() || !parent.contains(key)) throw ParseError("chart response: missing field " + path + key);
    return parent[key];
}

const json& first_element(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.empty()) throw ParseError("chart response: missing field " + path + "[0]");
    return arr[0];
}

struct Endpoint {
    std::string base;    // scheme://host[:port]
    std::string prefix;  // path prefix without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme = url.find("://");
    const auto host_start = scheme == std::string::npos ? 0 : scheme + 3;
    const auto slash = url.find('/', host_start);
    Endpoint e{url.substr(0, slash), slash == std::string::npos ? "" : url.substr(slash)};
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

long long epoch_seconds(const Date& d) { return to_epoch_days(d) * 86400LL; }

}  // namespace

std::vector<OhlcvRow> parse_chart_json(const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("chart response is not JSON: ") + e.what());
    }
    const json& chart = require(doc, "chart", "");
    if (chart.contains("error") && !chart["error"].is_null()) {
        throw ParseError("chart response reports an error: " + chart["error"].dump());
    }
    const json& result = first_element(require(chart, "result", "chart."), "chart.result");
    const std::string rp = "chart.result[0].";
    const json& meta = require(result, "meta", rp);
    const long long gmtoffset = require(meta, "gmtoffset", rp + "meta.").get<long long>();

    if (!result.contains("timestamp")) return {};  // no bars in range
    const json& ts = result["timestamp"];
    const json& indicators = require(result, "indicators", rp);
    const json& quote = first_element(require(indicators, "quote", rp + "indicators."), rp + "indicators.quote");
    const json& adj = first_element(require(indicators, "adjclose", rp + "indicators."), rp + "indicators.adjclose");
    const std::string qp = rp + "indicators.quote[0].";
    const json* columns[] = {&require(quote, "open", qp), &require(quote, "high", qp), &require(quote, "low", qp),
                             &require(quote, "close", qp), &require(adj, "adjclose", rp + "indicators.adjclose[0].")};
    const json& volume = require(quote, "volume", qp);
    for (const json* c : columns) {
        if (!c->is_array() || c->size() != ts.size()) throw ParseError("chart response: column length mismatch");
    }
    if (!volume.is_array() || volume.size() != ts.size()) throw ParseError("chart response: column length mismatch");

    std::vector<OhlcvRow> rows;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        bool has_null = ts[i].is_null() || volume[i].is_null();
        for (const json* c : columns) has_null = has_null || (*c)[i].is_null();
        if (has_null) {
            ++dropped;
            continue;
        }
        const long long local = ts[i].get<long long>() + gmtoffset;
        const long long days = local >= 0 ? local / 86400 : -((-local + 86399) / 86400);
        OhlcvRow r;
        r.date = from_epoch_days(days);
        r.open = (*columns[0])[i].get<double>();
        r.high = (*columns[1])[i].get<double>();
        r.low = (*columns[2])[i].get<double>();
        r.close = (*columns[3])[i].get<double>();
        r.adj_close = (*columns[4])[i].get<double>();
        r.volume = volume[i].get<std::int64_t>();
        r = round_to_csv_precision(r);
        validate_row(r, "chart response bar " + std::to_string(i));
        rows.push_back(r);
    }
    if (dropped > 0) log::info("chart response: dropped " + std::to_string(dropped) + " bars with null fields");
    std::sort(rows.begin(), rows.end(), [](const OhlcvRow& a, const OhlcvRow& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw DataIntegrityError("chart response: duplicate date " + format_date(rows[i].date));
        }
    }
    return rows;
}

std::vector<OhlcvRow> fetch_remote(const std::string& symbol, const Date& start, const Date& end,
                                   const FetchOptions& options) {
    if (start > end) return {};
    if (options.attempts < 1) throw InvalidArgument("fetch_remote: attempts must be >= 1");

    const Endpoint ep = split_endpoint(options.endpoint);
    // period2 is exclusive; one extra day makes `end` inclusive. Bars are filtered again below.
    const std::string path = ep.prefix + "/v8/finance/chart/" + symbol + "?period1=" +
                             std::to_string(epoch_seconds(start)) + "&period2=" +
                             std::to_string(epoch_seconds(end) + 86400) +
                             "&interval=1d&events=history&includeAdjustedClose=true";

    httplib::Client client(ep.base);
    client.set_follow_location(true);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    const httplib::Headers headers{{"User-Agent", "Mozilla/5.0 (quantcast)"}, {"Accept", "application/json"}};

    std::string last_error;
    auto backoff = options.initial_backoff;
    for (int attempt = 1; attempt <= options.attempts; ++attempt) {
        auto res = client.Get(path, headers);
        if (res && res->status == 200) {
            auto rows = filter_range(parse_chart_json(res->body), start, end);
            if (options.cache_file) write_csv(*options.cache_file, rows);
            return rows;
        }
        last_error = res ? "HTTP " + std::to_string(res->status) : "transport error: " + httplib::to_string(res.error());
        log::warning("fetch " + symbol + " attempt " + std::to_string(attempt) + " failed: " + last_error);
        if (attempt < options.attempts) {
            if (options.sleep) {
                options.sleep(backoff);
            } else {
                std::this_thread::sleep_for(backoff);
            }
            backoff *= 2;
        }
    }
    throw TransportError("fetch " + symbol + " from " + options.endpoint + " failed after " +
                         std::to_string(options.attempts) + " attempts: " + last_error);
}

std::vector<OhlcvRow> fetch_cached(const std::string& symbol, const Date& start, const Date& end,
                                   FetchOptions options) {
    const auto file = options.cache_file ? *options.cache_file : cache_file_for(symbol, start, end);
    if (std::filesystem::exists(file)) {
        log::info("using cached data " + file.string());
        return load_csv(file);
    }
    options.cache_file = file;
    return fetch_remote(symbol, start, end, options);
}

}  // namespace quantcast::app
