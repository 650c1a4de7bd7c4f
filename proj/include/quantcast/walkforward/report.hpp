#pragma once

#include <span>
#include <string>
#include <vector>

#include "quantcast/walkforward/metrics.hpp"

namespace quantcast::walkforward {

/// Fixed four-decimal rendering used in comparison tables ("18.3183").
std::string format_metric(double value);

struct ComparisonTable {
    std::vector<EvalReport> rows;  // ascending RMSE

    /// Plain-text table: Model, MAE, RMSE, R Square.
    std::string to_text() const;
};

/// Sorts by RMSE ascending; ties keep input order. Throws InvalidArgument on no reports.
ComparisonTable compare(std::span<const EvalReport> reports);

}  // namespace quantcast::walkforward
