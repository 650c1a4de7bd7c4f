#include "quantcast/walkforward/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "quantcast/error.hpp"

namespace quantcast::walkforward {

std::string format_metric(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

ComparisonTable compare(std::span<const EvalReport> reports) {
    if (reports.empty()) throw InvalidArgument("compare: no reports");
    ComparisonTable table{{reports.begin(), reports.end()}};
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const EvalReport& a, const EvalReport& b) { return a.rmse < b.rmse; });
    return table;
}

std::string ComparisonTable::to_text() const {
    std::size_t width = 5;
    for (const auto& r : rows) width = std::max(width, r.model_name.size());
    std::ostringstream out;
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
    out << pad("Model", width) << "  " << pad("MAE", 10) << "  " << pad("RMSE", 10) << "  R Square\n";
    for (const auto& r : rows) {
        out << pad(r.model_name, width) << "  " << pad(format_metric(r.mae), 10) << "  "
            << pad(format_metric(r.rmse), 10) << "  " << format_metric(r.r_square) << '\n';
    }
    return out.str();
}

}  // namespace quantcast::walkforward
