#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "quantcast/series/date.hpp"
#include "quantcast/series/price_series.hpp"

namespace quantcast::app {

struct OhlcvRow {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double adj_close = 0.0;
    std::int64_t volume = 0;

    friend bool operator==(const OhlcvRow&, const OhlcvRow&) = default;
};

inline constexpr std::string_view kOhlcvHeader = "date,open,high,low,close,adj_close,volume";

/// Prices > 0 and finite, volume >= 0. Throws DataIntegrityError naming `where`.
void validate_row(const OhlcvRow& row, const std::string& where);

/// Rounds every price to the 6 fractional digits the CSV stores.
OhlcvRow round_to_csv_precision(const OhlcvRow& row);

/// Parses the CSV schema; rows come back sorted by date. Malformed lines raise ParseError
/// and invalid or duplicate rows DataIntegrityError, both with the line number.
std::vector<OhlcvRow> parse_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<OhlcvRow> load_csv(const std::filesystem::path& path);

void write_csv(std::ostream& out, const std::vector<OhlcvRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<OhlcvRow>& rows);

/// Rows with start <= date <= end.
std::vector<OhlcvRow> filter_range(const std::vector<OhlcvRow>& rows, const Date& start, const Date& end);

/// Adjusted-close series.
series::PriceSeries to_price_series(const std::string& symbol, const std::vector<OhlcvRow>& rows);

}  // namespace quantcast::app
