#include "quantcast/app/plot_data.hpp"

#include <fstream>
#include <map>

#include "quantcast/app/predictions_csv.hpp"
#include "quantcast/error.hpp"

namespace quantcast::app {

namespace {

std::ofstream open(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    return out;
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(const std::filesystem::path& dir,
                                                  const std::vector<ModelRecords>& models) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;

    struct Row {
        double actual = 0.0;
        std::vector<std::optional<double>> predicted;
    };
    std::map<long long, Row> merged;

    for (std::size_t m = 0; m < models.size(); ++m) {
        const auto& [name, records] = models[m];
        const auto path = dir / ("plot_" + name + ".csv");
        auto out = open(path);
        out << "date,actual,predicted\n";
        for (const auto& r : records) {
            out << format_date(r.date) << ',' << format_double(r.actual) << ',' << format_double(r.predicted) << '\n';
            auto& row = merged[to_epoch_days(r.date)];
            if (row.predicted.empty()) {
                row.actual = r.actual;
                row.predicted.resize(models.size());
            }
            row.predicted[m] = r.predicted;
        }
        written.push_back(path);
    }

    const auto path = dir / "plot_merged.csv";
    auto out = open(path);
    out << "date,actual";
    for (const auto& [name, _] : models) out << ',' << name;
    out << '\n';
    for (const auto& [day, row] : merged) {
        out << format_date(from_epoch_days(day)) << ',' << format_double(row.actual);
        for (const auto& p : row.predicted) out << ',' << (p ? format_double(*p) : "");
        out << '\n';
    }
    written.push_back(path);
    return written;
}

}  // namespace quantcast::app
