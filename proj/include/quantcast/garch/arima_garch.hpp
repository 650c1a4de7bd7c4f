#pragma once

#include <span>
#include <string>
#include <vector>

#include "quantcast/arima/arima.hpp"
#include "quantcast/garch/garch.hpp"

namespace quantcast::garch {

/// ARIMA mean equation with GARCH(1,1) innovations, estimated jointly.
struct ArimaGarchModel {
    arima::ArimaOrder order;
    std::vector<double> phi;
    std::vector<double> theta;
    double alpha = 0.0;
    GarchParams garch;
    double log_likelihood = 0.0;
    double aic = 0.0;
    std::vector<double> residuals;
    std::vector<double> cond_variances;

    /// Heteroskedastic log-likelihood of the two-stage starting point.
    double two_stage_log_likelihood = 0.0;
    /// Joint refinement failed; parameters are the two-stage solution.
    bool degraded = false;
    std::string diagnostics;
    /// Variance held constant at omega (gamma = beta = 0 frozen).
    bool homoskedastic = false;
    int iterations = 0;

    arima::MeanEquation mean_equation() const { return {phi, theta, alpha}; }
};

struct ArimaGarchOptions {
    arima::ArimaFitOptions arima;
    GarchFitOptions garch;
    int max_iterations = 5000;
    double f_tolerance = 1e-8;
    /// Freeze gamma = beta = 0 and omega = CSS sigma^2; the joint objective then reduces
    /// to the homoskedastic ARIMA objective.
    bool freeze_homoskedastic = false;
};

/// Heteroskedastic Gaussian log-likelihood of the differenced series w under the mean
/// equation and GARCH parameters. The variance recursion starts at the sample variance
/// of the residuals; with `homoskedastic` every variance is omega.
double joint_log_likelihood(std::span<const double> w, const arima::MeanEquation& eq, const GarchParams& g,
                            bool homoskedastic = false);

/// Two-stage fit (CSS ARIMA, then GARCH on its residuals) refined by joint quasi-MLE.
ArimaGarchModel fit_arima_garch(std::span<const double> values, const arima::ArimaOrder& order,
                                const ArimaGarchOptions& options = {});

/// Same, starting from an already fitted ARIMA model on the same values.
ArimaGarchModel fit_arima_garch(std::span<const double> values, const arima::ArimaModel& initial,
                                const ArimaGarchOptions& options = {});

struct HybridForecast {
    double price = 0.0;
    double variance = 0.0;
};

/// Point forecast from the jointly estimated mean equation plus the GARCH variance forecast.
HybridForecast forecast_one_hybrid(const ArimaGarchModel& model, std::span<const double> history);

}  // namespace quantcast::garch
