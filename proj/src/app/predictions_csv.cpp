#include "quantcast/app/predictions_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "quantcast/error.hpp"

namespace quantcast::app {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw InvalidArgument("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

template <typename T>
T parse_field(const std::string& text, const std::string& where, const char* name) {
    T out{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(where + ": bad " + name + " '" + text + "'");
    }
    return out;
}

}  // namespace

void write_predictions(std::ostream& out, const std::vector<walkforward::ForecastRecord>& records) {
    out << kPredictionsHeader << '\n';
    for (const auto& r : records) {
        out << format_date(r.date) << ',' << format_double(r.actual) << ',' << format_double(r.predicted) << ',';
        if (r.order) out << r.order->p << ',' << r.order->d << ',' << r.order->q;
        else out << ",,";
        out << ',' << (r.aic ? format_double(*r.aic) : "") << ','
            << (r.variance_forecast ? format_double(*r.variance_forecast) : "") << '\n';
    }
}

void write_predictions(const std::filesystem::path& path, const std::vector<walkforward::ForecastRecord>& records) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    write_predictions(out, records);
}

std::vector<walkforward::ForecastRecord> read_predictions(std::istream& in, const std::string& model,
                                                          const std::string& source) {
    std::string line;
    if (!std::getline(in, line) || line != kPredictionsHeader) {
        throw ParseError(source + ":1: header must be '" + std::string(kPredictionsHeader) + "'");
    }
    std::vector<walkforward::ForecastRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no);
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 8) throw ParseError(where + ": expected 8 fields");

        walkforward::ForecastRecord r;
        const auto date = parse_date(f[0]);
        if (!date) throw ParseError(where + ": bad date '" + f[0] + "'");
        r.date = *date;
        r.actual = parse_field<double>(f[1], where, "actual");
        r.predicted = parse_field<double>(f[2], where, "predicted");
        if (!f[3].empty() || !f[4].empty() || !f[5].empty()) {
            r.order = arima::ArimaOrder{parse_field<int>(f[3], where, "order_p"), parse_field<int>(f[4], where, "order_d"),
                                        parse_field<int>(f[5], where, "order_q")};
        }
        if (!f[6].empty()) r.aic = parse_field<double>(f[6], where, "aic");
        if (!f[7].empty()) r.variance_forecast = parse_field<double>(f[7], where, "variance_forecast");
        r.model = model;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<walkforward::ForecastRecord> read_predictions(const std::filesystem::path& path,
                                                          const std::string& model) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_predictions(in, model, path.string());
}

}  // namespace quantcast::app
