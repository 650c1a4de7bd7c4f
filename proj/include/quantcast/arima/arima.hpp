#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace quantcast::arima {

struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;

    friend bool operator==(const ArimaOrder&, const ArimaOrder&) = default;
};

std::string to_string(const ArimaOrder& order);

/// Mean equation on the d-times differenced series w:
///
///   w_t = alpha + sum_i phi_i w_{t-i} + sum_j theta_j e_{t-j} + e_t
///
/// Pre-sample values of w are set to the sample mean of w and pre-sample residuals to 0.
struct MeanEquation {
    std::vector<double> phi;
    std::vector<double> theta;
    double alpha = 0.0;
};

/// Residual recursion of the mean equation over w.
std::vector<double> arma_residuals(std::span<const double> w, const MeanEquation& eq);

/// One-step prediction of w_{m} given w[0..m) and its residuals.
double arma_predict_next(std::span<const double> w, std::span<const double> residuals,
                         const MeanEquation& eq);

/// Gaussian conditional log-likelihood of w under `eq` with innovation variance sigma2.
double conditional_log_likelihood(std::span<const double> w, const MeanEquation& eq, double sigma2);

struct ArimaModel {
    ArimaOrder order;
    std::vector<double> phi;
    std::vector<double> theta;
    double alpha = 0.0;
    double sigma2 = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    std::vector<double> residuals;  // aligned to the differenced series
    std::size_t n_effective = 0;
    bool near_unit_root = false;    // some AR/MA root modulus < 1.001
    int iterations = 0;

    MeanEquation mean_equation() const { return {phi, theta, alpha}; }
    /// alpha / (1 - sum phi); nullopt when sum phi == 1.
    std::optional<double> implied_mean() const;
};

struct ArimaFitOptions {
    int max_iterations = 2000;
    double f_tolerance = 1e-8;
};

/// Conditional-sum-of-squares fit of ARIMA(p, d, q) with intercept.
///
/// Two starts (zeros and a Hannan-Rissanen regression estimate) are refined with
/// Nelder-Mead over tanh-transformed partial autocorrelations, so every returned model
/// is stationary and invertible. The intercept is concentrated out of the objective.
/// Throws FitFailure if neither start converges.
ArimaModel fit(std::span<const double> values, const ArimaOrder& order, const ArimaFitOptions& options = {});

/// 2k - 2 log L with k = p + q + 2 (intercept and innovation variance).
double aic(double log_likelihood, int p, int q);
inline double aic(const ArimaModel& model) { return aic(model.log_likelihood, model.order.p, model.order.q); }

/// Next-step price forecast from the observed history (differencing, residual recursion,
/// then integration back to the price level).
double forecast_one(const ArimaModel& model, std::span<const double> history);

/// Minimum history length accepted by forecast_one for `order`.
std::size_t min_forecast_history(const ArimaOrder& order);

struct GridSearchOptions {
    ArimaFitOptions fit;
    /// Exclude candidates with p + q above this bound.
    std::optional<int> max_p_plus_q;
    /// Reject fitted candidates with an AR or MA root modulus below this value. Off by
    /// default; 1.01 reproduces the common auto-ARIMA screen.
    std::optional<double> min_root_modulus;
};

struct GridSearchResult {
    ArimaOrder order;
    ArimaModel model;
    int candidates_fitted = 0;
    int candidates_failed = 0;
    int candidates_excluded = 0;
    int candidates_rejected = 0;  // fitted but screened out by min_root_modulus
};

/// Fits every (p, q) in [0, p_max] x [0, q_max] and returns the minimum-AIC model among
/// those that converged. Ties go to smaller p + q, then smaller p. Throws NoModelError
/// if nothing converged.
GridSearchResult grid_search(std::span<const double> values, int d, int p_max, int q_max,
                             const GridSearchOptions& options = {});

}  // namespace quantcast::arima
