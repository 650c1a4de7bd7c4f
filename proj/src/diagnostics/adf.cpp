#include "quantcast/diagnostics/adf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "quantcast/error.hpp"

namespace quantcast::diagnostics {

namespace {

// Probit response surface for the single-regressor Dickey-Fuller distribution:
// p = Phi(poly(tau)), with a quadratic below tau_star and a cubic above it.
// The `none` and `constant` rows are MacKinnon's (1994) coefficients; the trend row
// was fitted to a 100k-replication simulation at T = 2000.
struct SurfaceRow {
    double tau_star;
    double tau_min;
    double tau_max;
    std::array<double, 3> small_p;
    std::array<double, 4> large_p;
};

constexpr SurfaceRow kSurface[3] = {
    {-1.04, -19.04, std::numeric_limits<double>::infinity(),
     {0.6344, 1.2378, 0.032496},
     {0.4797, 0.93557, -0.06999, 0.033066}},
    {-1.61, -18.83, 2.74,
     {2.1659, 1.4412, 0.038269},
     {1.7339, 0.93202, -0.12745, -0.010368}},
    {-2.89, -16.18, 0.7,
     {3.0151, 1.4722, 0.031948},
     {2.6226, 0.83554, -0.23998, -0.033780}},
};

// Finite-sample critical values: b0 + b1/T + b2/T^2 + b3/T^3, rows 1%, 5%, 10%.
constexpr double kCritical[3][3][4] = {
    {{-2.56574, -2.2358, -3.627, 0.0},
     {-1.94100, -0.2686, -3.365, 31.223},
     {-1.61682, 0.2656, -2.714, 25.364}},
    {{-3.43035, -6.5393, -16.786, -79.433},
     {-2.86154, -2.8903, -4.234, -40.040},
     {-2.56677, -1.5384, -2.809, 0.0}},
    {{-3.95877, -9.0531, -28.428, -134.155},
     {-3.41049, -4.3904, -9.036, -45.374},
     {-3.12705, -2.5856, -3.925, -22.380}},
};

int deterministic_terms(AdfRegression r) {
    switch (r) {
        case AdfRegression::none: return 0;
        case AdfRegression::constant: return 1;
        case AdfRegression::constant_trend: return 2;
    }
    return 1;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

struct OlsFit {
    double tau = 0.0;
    double aic = 0.0;
    std::size_t nobs = 0;
};

// Regression of dy on [y_{t-1}, deterministic..., dy_{t-1..t-k}] using observations
// whose dy index runs over [first, dy.size()).
OlsFit fit_adf_regression(std::span<const double> y, const std::vector<double>& dy, int k,
                          std::size_t first, AdfRegression regression) {
    const std::size_t nobs = dy.size() - first;
    const int ndet = deterministic_terms(regression);
    const int ncols = 1 + ndet + k;
    if (nobs <= static_cast<std::size_t>(ncols) + 1) {
        throw InsufficientData("adf_test: too few observations after lagging");
    }

    Eigen::MatrixXd X(nobs, ncols);
    Eigen::VectorXd target(nobs);
    for (std::size_t r = 0; r < nobs; ++r) {
        const std::size_t t = first + r;  // dy[t] = y[t+1] - y[t]
        target(r) = dy[t];
        int c = 0;
        X(r, c++) = y[t];
        if (ndet >= 1) X(r, c++) = 1.0;
        if (ndet >= 2) X(r, c++) = static_cast<double>(t + 1);
        for (int i = 1; i <= k; ++i) X(r, c++) = dy[t - static_cast<std::size_t>(i)];
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
    const Eigen::MatrixXd R = qr.matrixQR().topRows(ncols).triangularView<Eigen::Upper>();
    const Eigen::VectorXd beta = qr.solve(target);
    const Eigen::VectorXd resid = target - X * beta;
    const double ssr = resid.squaredNorm();
    const double s2 = ssr / static_cast<double>(nobs - static_cast<std::size_t>(ncols));

    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(ncols, ncols));
    const double var_rho = s2 * Rinv.row(0).squaredNorm();

    OlsFit fit;
    fit.nobs = nobs;
    fit.tau = beta(0) / std::sqrt(var_rho);
    const double n = static_cast<double>(nobs);
    const double llf = -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(ssr / n) + 1.0);
    fit.aic = -2.0 * llf + 2.0 * ncols;
    return fit;
}

}  // namespace

std::string to_string(AdfRegression r) {
    switch (r) {
        case AdfRegression::none: return "none";
        case AdfRegression::constant: return "constant";
        case AdfRegression::constant_trend: return "constant_trend";
    }
    return "constant";
}

AdfRegression adf_regression_from_string(const std::string& s) {
    if (s == "none" || s == "n") return AdfRegression::none;
    if (s == "constant" || s == "c") return AdfRegression::constant;
    if (s == "constant_trend" || s == "ct") return AdfRegression::constant_trend;
    throw InvalidArgument("unknown ADF regression kind: " + s);
}

int schwert_max_lag(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double adf_p_value(double tau, AdfRegression regression) {
    const SurfaceRow& row = kSurface[deterministic_terms(regression)];
    if (std::isnan(tau)) return std::numeric_limits<double>::quiet_NaN();
    if (tau > row.tau_max) return 1.0;
    if (tau < row.tau_min) return 0.0;
    double z = 0.0;
    if (tau <= row.tau_star) {
        z = row.small_p[0] + tau * (row.small_p[1] + tau * row.small_p[2]);
    } else {
        z = row.large_p[0] + tau * (row.large_p[1] + tau * (row.large_p[2] + tau * row.large_p[3]));
    }
    return std::clamp(normal_cdf(z), 0.0, 1.0);
}

double adf_critical_value(AdfRegression regression, double level, std::size_t nobs) {
    int col = -1;
    if (std::abs(level - 0.01) < 1e-12) col = 0;
    if (std::abs(level - 0.05) < 1e-12) col = 1;
    if (std::abs(level - 0.10) < 1e-12) col = 2;
    if (col < 0) throw InvalidArgument("adf_critical_value: level must be 0.01, 0.05 or 0.10");
    if (nobs == 0) throw InvalidArgument("adf_critical_value: nobs must be positive");
    const double* b = kCritical[deterministic_terms(regression)][col];
    const double inv = 1.0 / static_cast<double>(nobs);
    return b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
}

AdfResult adf_test(std::span<const double> values, AdfRegression regression, std::optional<int> lags) {
    const std::size_t n = values.size();
    if (n < 20) throw InsufficientData("adf_test: need at least 20 observations");
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidArgument("adf_test: non-finite value");
    }
    std::vector<double> dy(n - 1);
    for (std::size_t i = 1; i < n; ++i) dy[i - 1] = values[i] - values[i - 1];

    const int ndet = deterministic_terms(regression);
    AdfResult result;
    result.regression = regression;

    int chosen = 0;
    if (lags) {
        if (*lags < 0) throw InvalidArgument("adf_test: lag must be non-negative");
        chosen = *lags;
        result.max_lag = chosen;
    } else {
        // Keep at least half the sample for the regression with the longest lag.
        const int cap = static_cast<int>(n / 2) - ndet - 1;
        const int max_lag = std::max(0, std::min(schwert_max_lag(n), cap));
        result.max_lag = max_lag;
        double best_aic = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= max_lag; ++k) {
            const OlsFit fit = fit_adf_regression(values, dy, k, static_cast<std::size_t>(max_lag), regression);
            if (fit.aic < best_aic) {
                best_aic = fit.aic;
                chosen = k;
            }
        }
    }

    const OlsFit final_fit = fit_adf_regression(values, dy, chosen, static_cast<std::size_t>(chosen), regression);
    result.statistic = final_fit.tau;
    result.lags_used = chosen;
    result.n_effective = final_fit.nobs;
    result.p_value = adf_p_value(final_fit.tau, regression);
    result.critical_1pct = adf_critical_value(regression, 0.01, final_fit.nobs);
    result.critical_5pct = adf_critical_value(regression, 0.05, final_fit.nobs);
    result.critical_10pct = adf_critical_value(regression, 0.10, final_fit.nobs);
    return result;
}

}  // namespace quantcast::diagnostics
