#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace quantcast::walkforward {

/// Mean absolute error. Throws InvalidArgument on empty input or length mismatch.
double mae(std::span<const double> actuals, std::span<const double> predictions);

/// Root mean square error.
double rmse(std::span<const double> actuals, std::span<const double> predictions);

/// 1 - SS_res / SS_tot. Throws InvalidArgument when the actuals are constant.
double r_square(std::span<const double> actuals, std::span<const double> predictions);

struct EvalReport {
    std::string model_name;
    double mae = 0.0;
    double rmse = 0.0;
    double r_square = 0.0;
    std::size_t n = 0;
};

/// All three metrics; asserts rmse >= mae.
EvalReport evaluate(std::string model_name, std::span<const double> actuals,
                    std::span<const double> predictions);

}  // namespace quantcast::walkforward
