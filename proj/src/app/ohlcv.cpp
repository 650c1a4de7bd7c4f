#include "quantcast/app/ohlcv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quantcast/error.hpp"

namespace quantcast::app {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

double round6(double v) {
    const std::string s = fixed6(v);
    double out = 0.0;
    parse_number(std::string_view(s), out);
    return out;
}

}  // namespace

void validate_row(const OhlcvRow& row, const std::string& where) {
    for (double p : {row.open, row.high, row.low, row.close, row.adj_close}) {
        if (!std::isfinite(p) || p <= 0.0) {
            throw DataIntegrityError(where + ": prices must be finite and positive");
        }
    }
    if (row.volume < 0) throw DataIntegrityError(where + ": volume must be non-negative");
}

OhlcvRow round_to_csv_precision(const OhlcvRow& row) {
    OhlcvRow r = row;
    r.open = round6(r.open);
    r.high = round6(r.high);
    r.low = round6(r.low);
    r.close = round6(r.close);
    r.adj_close = round6(r.adj_close);
    return r;
}

std::vector<OhlcvRow> parse_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(source + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kOhlcvHeader) {
        throw ParseError(source + ":1: header must be '" + std::string(kOhlcvHeader) + "'");
    }

    std::vector<std::pair<OhlcvRow, std::size_t>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no);
        const auto f = split_fields(line);
        if (f.size() != 7) throw ParseError(where + ": expected 7 fields, got " + std::to_string(f.size()));

        OhlcvRow row;
        const auto date = parse_date(f[0]);
        if (!date) throw ParseError(where + ": bad date '" + std::string(f[0]) + "'");
        row.date = *date;
        double* prices[] = {&row.open, &row.high, &row.low, &row.close, &row.adj_close};
        static constexpr const char* names[] = {"open", "high", "low", "close", "adj_close"};
        for (int i = 0; i < 5; ++i) {
            if (!parse_number(f[static_cast<std::size_t>(i + 1)], *prices[i])) {
                throw ParseError(where + ": bad " + names[i] + " '" + std::string(f[static_cast<std::size_t>(i + 1)]) + "'");
            }
        }
        if (!parse_number(f[6], row.volume)) throw ParseError(where + ": bad volume '" + std::string(f[6]) + "'");
        validate_row(row, where);
        rows.emplace_back(row, line_no);
    }

    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first.date < b.first.date; });
    std::vector<OhlcvRow> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].first.date == rows[i - 1].first.date) {
            throw DataIntegrityError(source + ":" + std::to_string(rows[i].second) + ": duplicate date " +
                                     format_date(rows[i].first.date));
        }
        out.push_back(rows[i].first);
    }
    return out;
}

std::vector<OhlcvRow> load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return parse_csv(in, path.string());
}

void write_csv(std::ostream& out, const std::vector<OhlcvRow>& rows) {
    out << kOhlcvHeader << '\n';
    for (const auto& r : rows) {
        out << format_date(r.date) << ',' << fixed6(r.open) << ',' << fixed6(r.high) << ',' << fixed6(r.low)
            << ',' << fixed6(r.close) << ',' << fixed6(r.adj_close) << ',' << r.volume << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const std::vector<OhlcvRow>& rows) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    write_csv(out, rows);
}

std::vector<OhlcvRow> filter_range(const std::vector<OhlcvRow>& rows, const Date& start, const Date& end) {
    std::vector<OhlcvRow> out;
    for (const auto& r : rows) {
        if (r.date >= start && r.date <= end) out.push_back(r);
    }
    return out;
}

series::PriceSeries to_price_series(const std::string& symbol, const std::vector<OhlcvRow>& rows) {
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(rows.size());
    values.reserve(rows.size());
    for (const auto& r : rows) {
        dates.push_back(r.date);
        values.push_back(r.adj_close);
    }
    return series::PriceSeries(symbol, std::move(dates), std::move(values));
}

}  // namespace quantcast::app
