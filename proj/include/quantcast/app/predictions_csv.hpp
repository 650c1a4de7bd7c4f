#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "quantcast/walkforward/engine.hpp"

namespace quantcast::app {

inline constexpr std::string_view kPredictionsHeader =
    "date,actual,predicted,order_p,order_d,order_q,aic,variance_forecast";

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Order, AIC and variance columns are left empty when absent.
void write_predictions(std::ostream& out, const std::vector<walkforward::ForecastRecord>& records);
void write_predictions(const std::filesystem::path& path, const std::vector<walkforward::ForecastRecord>& records);

/// Inverse of write_predictions; `model` is stored in each record.
std::vector<walkforward::ForecastRecord> read_predictions(std::istream& in, const std::string& model,
                                                          const std::string& source = "<stream>");
std::vector<walkforward::ForecastRecord> read_predictions(const std::filesystem::path& path,
                                                          const std::string& model);

}  // namespace quantcast::app
