#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quantcast/app/ohlcv.hpp"

namespace quantcast::app {

inline constexpr const char* kDefaultEndpoint = "https://query1.finance.yahoo.com";

struct FetchOptions {
    std::string endpoint = kDefaultEndpoint;
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{1000};
    /// Replaces the real sleep between retries (tests).
    std::function<void(std::chrono::milliseconds)> sleep;
    /// Write the result here as CSV; nullopt disables caching.
    std::optional<std::filesystem::path> cache_file;
    std::chrono::seconds timeout{30};
};

/// QUANTCAST_CACHE_DIR if set, else $HOME/.cache/quantcast, else ./.quantcast-cache.
std::filesystem::path cache_dir();
std::filesystem::path cache_file_for(const std::string& symbol, const Date& start, const Date& end);

/// Parses a chart-JSON document (timestamp array, quote arrays, adjclose array) into daily
/// bars. Rows with any null field are dropped; dates use the exchange gmtoffset. Missing
/// fields raise ParseError naming the field.
std::vector<OhlcvRow> parse_chart_json(const std::string& body);

/// Daily bars for start..end inclusive from `endpoint`, sorted by date, prices rounded to
/// CSV precision so that the cached file reloads identically. start > end returns an empty
/// list without a request. HTTP failures are retried with doubling backoff; after the last
/// attempt a TransportError is thrown.
std::vector<OhlcvRow> fetch_remote(const std::string& symbol, const Date& start, const Date& end,
                                   const FetchOptions& options = {});

/// Loads the cache file for the request if present, otherwise fetches and caches.
std::vector<OhlcvRow> fetch_cached(const std::string& symbol, const Date& start, const Date& end,
                                   FetchOptions options = {});

}  // namespace quantcast::app
