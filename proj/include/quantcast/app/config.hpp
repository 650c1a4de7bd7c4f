#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quantcast/neural/config.hpp"
#include "quantcast/series/date.hpp"
#include "quantcast/series/transforms.hpp"
#include "quantcast/walkforward/engine.hpp"

namespace quantcast::app {

struct ArimaSection {
    bool enabled = true;
    int d = 1;
    int p_max = 4;
    int q_max = 4;
    std::vector<walkforward::WindowPolicy> policies{walkforward::WindowPolicy::expanding(),
                                                    walkforward::WindowPolicy::rolling(30),
                                                    walkforward::WindowPolicy::rolling(60)};
    bool reselect_each_step = true;
};

struct AppConfig {
    std::string symbol = "NVDA";
    Date start{std::chrono::year{2019}, std::chrono::month{4}, std::chrono::day{12}};
    Date end{std::chrono::year{2024}, std::chrono::month{4}, std::chrono::day{11}};
    series::SplitSpec split;
    ArimaSection arima;
    bool arima_garch_enabled = true;
    bool lstm_enabled = true;
    bool mlp_enabled = true;
    neural::LstmConfig lstm;
    neural::MlpConfig mlp;
    /// Applied to both networks.
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = "runs/latest";
    /// CSV input; when unset the data is fetched (or read from the cache).
    std::optional<std::filesystem::path> data;
    std::string endpoint = "https://query1.finance.yahoo.com";

    /// start < end, valid sub-configs, at least one policy when ARIMA is enabled.
    void validate() const;
};

nlohmann::json to_json(const AppConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
AppConfig config_from_json(const nlohmann::json& j);
AppConfig load_config(const std::filesystem::path& path);

}  // namespace quantcast::app
