#include "quantcast/series/price_series.hpp"

#include <cmath>

#include "quantcast/error.hpp"

namespace quantcast::series {

PriceSeries::PriceSeries(std::string symbol, std::vector<Date> dates, std::vector<double> values)
    : symbol_(std::move(symbol)), dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size()) {
        throw InvalidArgument("PriceSeries: dates and values differ in length");
    }
    if (values_.size() < 2) {
        throw InvalidArgument("PriceSeries: at least 2 observations required");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
            throw InvalidArgument("PriceSeries: value at index " + std::to_string(i) +
                                  " is not finite and positive");
        }
        if (i > 0 && !(dates_[i - 1] < dates_[i])) {
            throw InvalidArgument("PriceSeries: dates not strictly increasing at " +
                                  format_date(dates_[i]));
        }
    }
}

PriceSeries PriceSeries::slice(std::size_t first, std::size_t count) const {
    if (first + count > size()) throw InvalidArgument("PriceSeries::slice out of range");
    return PriceSeries(symbol_,
                       std::vector<Date>(dates_.begin() + first, dates_.begin() + first + count),
                       std::vector<double>(values_.begin() + first, values_.begin() + first + count));
}

}  // namespace quantcast::series
