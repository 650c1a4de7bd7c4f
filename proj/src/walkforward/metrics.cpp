#include "quantcast/walkforward/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "quantcast/error.hpp"

namespace quantcast::walkforward {

namespace {

void check(std::span<const double> a, std::span<const double> p, const char* what) {
    if (a.empty()) throw InvalidArgument(std::string(what) + ": empty input");
    if (a.size() != p.size()) throw InvalidArgument(std::string(what) + ": length mismatch");
}

}  // namespace

double mae(std::span<const double> actuals, std::span<const double> predictions) {
    check(actuals, predictions, "mae");
    double s = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) s += std::abs(actuals[i] - predictions[i]);
    return s / static_cast<double>(actuals.size());
}

double rmse(std::span<const double> actuals, std::span<const double> predictions) {
    check(actuals, predictions, "rmse");
    double s = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const double e = actuals[i] - predictions[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(actuals.size()));
}

double r_square(std::span<const double> actuals, std::span<const double> predictions) {
    check(actuals, predictions, "r_square");
    double mean = 0.0;
    for (double y : actuals) mean += y;
    mean /= static_cast<double>(actuals.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        ss_res += (actuals[i] - predictions[i]) * (actuals[i] - predictions[i]);
        ss_tot += (actuals[i] - mean) * (actuals[i] - mean);
    }
    if (!(ss_tot > 0.0)) throw InvalidArgument("r_square: undefined for constant actuals");
    return 1.0 - ss_res / ss_tot;
}

EvalReport evaluate(std::string model_name, std::span<const double> actuals,
                    std::span<const double> predictions) {
    EvalReport r;
    r.model_name = std::move(model_name);
    r.mae = mae(actuals, predictions);
    r.rmse = rmse(actuals, predictions);
    r.r_square = r_square(actuals, predictions);
    r.n = actuals.size();
    // Jensen: rmse >= mae up to rounding.
    if (r.rmse < r.mae * (1.0 - 1e-12)) throw InvalidState("evaluate: rmse < mae for " + r.model_name);
    return r;
}

}  // namespace quantcast::walkforward
