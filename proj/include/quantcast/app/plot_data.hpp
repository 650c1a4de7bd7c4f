#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "quantcast/walkforward/engine.hpp"

namespace quantcast::app {

using ModelRecords = std::pair<std::string, std::vector<walkforward::ForecastRecord>>;

/// Writes `plot_<model>.csv` (date,actual,predicted) per model and `plot_merged.csv`
/// (date,actual,<model>...) keyed by date; cells for models without that date are empty.
/// Returns the paths written.
std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& dir,
                                                  const std::vector<ModelRecords>& models);

}  // namespace quantcast::app
