#include "quantcast/arima/arima.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "quantcast/arima/polynomial.hpp"
#include "quantcast/error.hpp"
#include "quantcast/log.hpp"
#include "quantcast/optim/nelder_mead.hpp"
#include "quantcast/series/transforms.hpp"

namespace quantcast::arima {

namespace {

constexpr double kNearUnitRoot = 1.001;

double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Lower bound on the innovation variance so a perfect fit still has a finite likelihood.
double variance_floor(std::span<const double> w) {
    double ms = 0.0;
    for (double x : w) ms += x * x;
    ms /= static_cast<double>(std::max<std::size_t>(w.size(), 1));
    return 1e-20 * ms + std::numeric_limits<double>::min();
}

double gaussian_loglik(std::size_t m, double ssr, double sigma2) {
    const double n = static_cast<double>(m);
    return -0.5 * n * std::log(2.0 * std::numbers::pi * sigma2) - ssr / (2.0 * sigma2);
}

// CSS problem with the intercept concentrated out: for fixed (phi, theta) the residuals
// are e = a - alpha * b, so the optimal alpha and SSR follow in closed form.
class CssProblem {
public:
    CssProblem(std::span<const double> w, int p, int q)
        : w_(w), p_(p), q_(q), presample_(mean_of(w)), a_(w.size()), b_(w.size()) {}

    struct Evaluation {
        double alpha;
        double ssr;
    };

    Evaluation evaluate(std::span<const double> phi, std::span<const double> theta) {
        const std::size_t m = w_.size();
        double sab = 0.0, sbb = 0.0, saa = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            double at = w_[t];
            double bt = 1.0;
            for (int i = 1; i <= p_; ++i) {
                const double x = (t >= static_cast<std::size_t>(i)) ? w_[t - i] : presample_;
                at -= phi[i - 1] * x;
            }
            for (int j = 1; j <= q_; ++j) {
                if (t >= static_cast<std::size_t>(j)) {
                    at -= theta[j - 1] * a_[t - j];
                    bt -= theta[j - 1] * b_[t - j];
                }
            }
            a_[t] = at;
            b_[t] = bt;
            sab += at * bt;
            sbb += bt * bt;
            saa += at * at;
        }
        const double alpha = sab / sbb;
        return {alpha, std::max(saa - alpha * sab, 0.0)};
    }

    double objective(std::span<const double> u) {
        const auto phi = ar_from_unconstrained(u.subspan(0, static_cast<std::size_t>(p_)));
        const auto theta = ma_from_unconstrained(u.subspan(static_cast<std::size_t>(p_)));
        const Evaluation e = evaluate(phi, theta);
        const double sigma2 = std::max(e.ssr / static_cast<double>(w_.size()), variance_floor(w_));
        return 0.5 * std::log(sigma2);
    }

private:
    std::span<const double> w_;
    int p_;
    int q_;
    double presample_;
    std::vector<double> a_;
    std::vector<double> b_;
};

Eigen::VectorXd least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    return X.colPivHouseholderQr().solve(y);
}

// Hannan-Rissanen: long AR for residual proxies, then OLS on lagged values and residuals.
std::optional<std::vector<double>> hannan_rissanen_start(std::span<const double> w, int p, int q) {
    const std::size_t m = w.size();
    const std::size_t long_order = std::min<std::size_t>(std::max(p + q + 3, 8), m / 4);
    if (long_order == 0) return std::nullopt;
    const std::size_t first = long_order + static_cast<std::size_t>(q);
    if (m <= first + 3 * static_cast<std::size_t>(p + q + 1)) return std::nullopt;

    std::vector<double> resid(m, 0.0);
    if (q > 0) {
        const auto rows = static_cast<Eigen::Index>(m - long_order);
        Eigen::MatrixXd X(rows, static_cast<Eigen::Index>(long_order + 1));
        Eigen::VectorXd y(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const std::size_t t = long_order + static_cast<std::size_t>(r);
            y(r) = w[t];
            X(r, 0) = 1.0;
            for (std::size_t i = 1; i <= long_order; ++i) X(r, static_cast<Eigen::Index>(i)) = w[t - i];
        }
        const Eigen::VectorXd beta = least_squares(X, y);
        const Eigen::VectorXd fitted = X * beta;
        for (Eigen::Index r = 0; r < rows; ++r) resid[long_order + static_cast<std::size_t>(r)] = y(r) - fitted(r);
    }

    const auto rows = static_cast<Eigen::Index>(m - first);
    Eigen::MatrixXd X(rows, 1 + p + q);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = first + static_cast<std::size_t>(r);
        y(r) = w[t];
        X(r, 0) = 1.0;
        for (int i = 1; i <= p; ++i) X(r, i) = w[t - i];
        for (int j = 1; j <= q; ++j) X(r, p + j) = resid[t - j];
    }
    const Eigen::VectorXd beta = least_squares(X, y);
    if (!beta.allFinite()) return std::nullopt;

    std::vector<double> phi(beta.data() + 1, beta.data() + 1 + p);
    std::vector<double> theta(beta.data() + 1 + p, beta.data() + 1 + p + q);
    // Pull non-stationary / non-invertible estimates back inside the admissible region.
    for (int attempt = 0; attempt < 30; ++attempt) {
        auto ua = ar_to_unconstrained(phi);
        auto um = ma_to_unconstrained(theta);
        if (ua && um) {
            std::vector<double> u = *ua;
            u.insert(u.end(), um->begin(), um->end());
            for (double v : u) {
                if (!std::isfinite(v)) return std::nullopt;
            }
            return u;
        }
        for (auto& c : phi) c *= 0.9;
        for (auto& c : theta) c *= 0.9;
    }
    return std::nullopt;
}

void validate_order(const ArimaOrder& order) {
    if (order.p < 0 || order.q < 0 || order.d < 0) throw InvalidArgument("ARIMA order must be non-negative");
    if (order.d > 2) throw InvalidArgument("ARIMA differencing order must be <= 2");
}

}  // namespace

std::string to_string(const ArimaOrder& order) {
    return "(" + std::to_string(order.p) + "," + std::to_string(order.d) + "," + std::to_string(order.q) + ")";
}

std::vector<double> arma_residuals(std::span<const double> w, const MeanEquation& eq) {
    const std::size_t m = w.size();
    const double presample = mean_of(w);
    const std::size_t p = eq.phi.size();
    const std::size_t q = eq.theta.size();
    std::vector<double> e(m);
    for (std::size_t t = 0; t < m; ++t) {
        double v = w[t] - eq.alpha;
        for (std::size_t i = 1; i <= p; ++i) v -= eq.phi[i - 1] * (t >= i ? w[t - i] : presample);
        for (std::size_t j = 1; j <= q && j <= t; ++j) v -= eq.theta[j - 1] * e[t - j];
        e[t] = v;
    }
    return e;
}

double arma_predict_next(std::span<const double> w, std::span<const double> residuals, const MeanEquation& eq) {
    const std::size_t m = w.size();
    const double presample = mean_of(w);
    double next = eq.alpha;
    for (std::size_t i = 1; i <= eq.phi.size(); ++i) next += eq.phi[i - 1] * (m >= i ? w[m - i] : presample);
    for (std::size_t j = 1; j <= eq.theta.size() && j <= m; ++j) next += eq.theta[j - 1] * residuals[m - j];
    return next;
}

double conditional_log_likelihood(std::span<const double> w, const MeanEquation& eq, double sigma2) {
    const auto e = arma_residuals(w, eq);
    double ssr = 0.0;
    for (double x : e) ssr += x * x;
    return gaussian_loglik(w.size(), ssr, sigma2);
}

std::optional<double> ArimaModel::implied_mean() const {
    const double s = 1.0 - std::accumulate(phi.begin(), phi.end(), 0.0);
    if (s == 0.0) return std::nullopt;
    return alpha / s;
}

double aic(double log_likelihood, int p, int q) { return 2.0 * (p + q + 2) - 2.0 * log_likelihood; }

ArimaModel fit(std::span<const double> values, const ArimaOrder& order, const ArimaFitOptions& options) {
    validate_order(order);
    if (values.size() <= static_cast<std::size_t>(order.d)) {
        throw InsufficientData("ARIMA fit: series shorter than differencing order");
    }
    const std::vector<double> w = series::difference(values, order.d).values;
    const std::size_t m = w.size();
    if (m <= static_cast<std::size_t>(order.p + order.q + 1)) {
        throw InsufficientData("ARIMA fit: differenced length " + std::to_string(m) + " too short for order " +
                               to_string(order));
    }

    ArimaModel model;
    model.order = order;
    model.n_effective = m;

    const int p = order.p;
    const int q = order.q;
    if (p == 0 && q == 0) {
        model.alpha = mean_of(w);
    } else {
        CssProblem problem(w, p, q);
        const optim::Objective objective = [&problem](std::span<const double> u) { return problem.objective(u); };
        optim::NelderMeadOptions nm;
        nm.max_iterations = options.max_iterations;
        nm.f_tolerance = options.f_tolerance;
        nm.initial_step = {0.2};

        std::vector<std::vector<double>> starts{std::vector<double>(static_cast<std::size_t>(p + q), 0.0)};
        if (auto hr = hannan_rissanen_start(w, p, q)) starts.push_back(std::move(*hr));

        std::optional<optim::NelderMeadResult> best;
        for (const auto& start : starts) {
            auto result = optim::nelder_mead(objective, start, nm);
            model.iterations += result.iterations;
            if (!result.converged) continue;
            if (!best || result.value < best->value) best = std::move(result);
        }
        if (!best) throw FitFailure("ARIMA" + to_string(order) + ": optimizer did not converge from any start");

        const std::span<const double> u(best->x);
        model.phi = ar_from_unconstrained(u.subspan(0, static_cast<std::size_t>(p)));
        model.theta = ma_from_unconstrained(u.subspan(static_cast<std::size_t>(p)));
        model.alpha = problem.evaluate(model.phi, model.theta).alpha;
    }

    model.residuals = arma_residuals(w, model.mean_equation());
    double ssr = 0.0;
    for (double e : model.residuals) ssr += e * e;
    model.sigma2 = std::max(ssr / static_cast<double>(m), variance_floor(w));
    model.log_likelihood = gaussian_loglik(m, ssr, model.sigma2);
    model.aic = aic(model.log_likelihood, p, q);
    model.near_unit_root =
        std::min(min_root_modulus(model.phi), min_ma_root_modulus(model.theta)) < kNearUnitRoot;
    if (model.near_unit_root) {
        log::debug("ARIMA" + to_string(order) + ": root modulus within 0.001 of the unit circle");
    }
    return model;
}

std::size_t min_forecast_history(const ArimaOrder& order) {
    return static_cast<std::size_t>(std::max(order.p + order.d, order.d + 1));
}

double forecast_one(const ArimaModel& model, std::span<const double> history) {
    const ArimaOrder& order = model.order;
    if (history.size() < min_forecast_history(order)) {
        throw InsufficientData("forecast_one: history of " + std::to_string(history.size()) +
                               " values is too short for ARIMA" + to_string(order));
    }
    const std::vector<double> w = series::difference(history, order.d).values;
    const MeanEquation eq = model.mean_equation();
    const auto residuals = arma_residuals(w, eq);
    const double next_w = arma_predict_next(w, residuals, eq);
    return series::integrate_next(history, order.d, next_w);
}

GridSearchResult grid_search(std::span<const double> values, int d, int p_max, int q_max,
                             const GridSearchOptions& options) {
    if (p_max < 0 || q_max < 0) throw InvalidArgument("grid_search: bounds must be non-negative");
    const std::size_t m = values.size() > static_cast<std::size_t>(d) ? values.size() - static_cast<std::size_t>(d) : 0;

    GridSearchResult out;
    std::optional<ArimaModel> best;
    auto better = [](const ArimaModel& a, const ArimaModel& b) {
        if (a.aic != b.aic) return a.aic < b.aic;
        const int sa = a.order.p + a.order.q;
        const int sb = b.order.p + b.order.q;
        if (sa != sb) return sa < sb;
        return a.order.p < b.order.p;
    };

    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            const ArimaOrder order{p, d, q};
            if ((options.max_p_plus_q && p + q > *options.max_p_plus_q) ||
                m <= static_cast<std::size_t>(p + q + 1)) {
                ++out.candidates_excluded;
                continue;
            }
            try {
                ArimaModel model = fit(values, order, options.fit);
                ++out.candidates_fitted;
                if (options.min_root_modulus &&
                    std::min(min_root_modulus(model.phi), min_ma_root_modulus(model.theta)) <
                        *options.min_root_modulus) {
                    ++out.candidates_rejected;
                    continue;
                }
                if (!best || better(model, *best)) best = std::move(model);
            } catch (const FitFailure& e) {
                ++out.candidates_failed;
                log::warning(std::string("grid_search: skipping candidate: ") + e.what());
            }
        }
    }
    if (!best) throw NoModelError("grid_search: no ARIMA candidate converged");
    out.order = best->order;
    out.model = std::move(*best);
    return out;
}

}  // namespace quantcast::arima
