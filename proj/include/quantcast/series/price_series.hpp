#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quantcast/series/date.hpp"

namespace quantcast::series {

/// Dated, strictly increasing adjusted-close observations.
///
/// Invariants are checked on construction: |dates| == |values| >= 2, dates strictly
/// increasing, every value finite and > 0. Immutable afterwards.
class PriceSeries {
public:
    PriceSeries(std::string symbol, std::vector<Date> dates, std::vector<double> values);

    const std::string& symbol() const { return symbol_; }
    std::span<const Date> dates() const { return dates_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    /// Contiguous sub-series [first, first + count). Must itself satisfy the invariants.
    PriceSeries slice(std::size_t first, std::size_t count) const;

private:
    std::string symbol_;
    std::vector<Date> dates_;
    std::vector<double> values_;
};

}  // namespace quantcast::series
