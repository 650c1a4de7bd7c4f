#include "quantcast/garch/arima_garch.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "quantcast/arima/polynomial.hpp"
#include "quantcast/error.hpp"
#include "quantcast/log.hpp"
#include "quantcast/optim/nelder_mead.hpp"
#include "quantcast/series/transforms.hpp"

namespace quantcast::garch {

namespace {

std::vector<double> variance_path(std::span<const double> e, const GarchParams& g, bool homoskedastic) {
    if (homoskedastic) return std::vector<double>(e.size(), g.omega);
    return conditional_variances(e, g, sample_variance(e));
}

struct JointLayout {
    int p;
    int q;
    bool homoskedastic;
    double alpha_scale;
    double garch_scale2;

    std::size_t size() const { return static_cast<std::size_t>(1 + p + q) + (homoskedastic ? 0 : 3); }

    arima::MeanEquation mean(std::span<const double> x) const {
        return {arima::ar_from_unconstrained(x.subspan(1, static_cast<std::size_t>(p))),
                arima::ma_from_unconstrained(x.subspan(static_cast<std::size_t>(1 + p), static_cast<std::size_t>(q))),
                x[0] * alpha_scale};
    }

    GarchParams garch(std::span<const double> x, const GarchParams& frozen) const {
        if (homoskedastic) return frozen;
        return garch_from_unconstrained(x.subspan(static_cast<std::size_t>(1 + p + q), 3), garch_scale2);
    }

    std::vector<double> pack(const arima::MeanEquation& eq, const GarchParams& g) const {
        std::vector<double> x{eq.alpha / alpha_scale};
        const auto ua = arima::ar_to_unconstrained(eq.phi);
        const auto um = arima::ma_to_unconstrained(eq.theta);
        if (!ua || !um) throw InvalidState("ARIMA-GARCH: starting mean equation is not stationary/invertible");
        x.insert(x.end(), ua->begin(), ua->end());
        x.insert(x.end(), um->begin(), um->end());
        if (!homoskedastic) {
            const auto ug = garch_to_unconstrained(g, garch_scale2);
            x.insert(x.end(), ug.begin(), ug.end());
        }
        return x;
    }
};

int parameter_count(const arima::ArimaOrder& order, bool homoskedastic) {
    return order.p + order.q + 1 + (homoskedastic ? 1 : 3);
}

}  // namespace

double joint_log_likelihood(std::span<const double> w, const arima::MeanEquation& eq, const GarchParams& g,
                            bool homoskedastic) {
    const auto e = arima::arma_residuals(w, eq);
    const auto var = variance_path(e, g, homoskedastic);
    return gaussian_log_likelihood(e, var);
}

ArimaGarchModel fit_arima_garch(std::span<const double> values, const arima::ArimaOrder& order,
                                const ArimaGarchOptions& options) {
    return fit_arima_garch(values, arima::fit(values, order, options.arima), options);
}

ArimaGarchModel fit_arima_garch(std::span<const double> values, const arima::ArimaModel& initial,
                                const ArimaGarchOptions& options) {
    const arima::ArimaOrder order = initial.order;
    const std::vector<double> w = series::difference(values, order.d).values;
    if (w.size() != initial.residuals.size()) {
        throw InvalidArgument("fit_arima_garch: initial model was fitted on different data");
    }
    const bool frozen = options.freeze_homoskedastic;

    ArimaGarchModel model;
    model.order = order;
    model.homoskedastic = frozen;

    // Stage two: GARCH on the CSS residuals.
    GarchParams start_garch;
    bool have_two_stage = true;
    if (frozen) {
        start_garch = {initial.sigma2, 0.0, 0.0};
    } else {
        try {
            const GarchFit g = fit_garch11(initial.residuals, options.garch);
            start_garch = g.params;
            model.iterations += g.iterations;
        } catch (const FitFailure& e) {
            have_two_stage = false;
            const double s2 = sample_variance(initial.residuals);
            start_garch = {0.1 * s2, 0.05, 0.85};
            model.diagnostics = std::string("two-stage GARCH failed: ") + e.what();
        }
    }

    const arima::MeanEquation start_mean = initial.mean_equation();
    model.two_stage_log_likelihood = joint_log_likelihood(w, start_mean, start_garch, frozen);

    double w_scale = std::sqrt(sample_variance(w));
    if (!(w_scale > 0.0)) w_scale = 1.0;
    double resid_var = sample_variance(initial.residuals);
    if (!(resid_var > 0.0)) resid_var = 1.0;
    const JointLayout layout{order.p, order.q, frozen, w_scale, resid_var};

    const double m = static_cast<double>(w.size());
    const optim::Objective objective = [&](std::span<const double> x) {
        const double ll = joint_log_likelihood(w, layout.mean(x), layout.garch(x, start_garch), frozen);
        return -ll / m;
    };

    optim::NelderMeadOptions nm;
    nm.max_iterations = options.max_iterations;
    nm.f_tolerance = options.f_tolerance;
    nm.initial_step = {0.1};
    const auto result = optim::nelder_mead(objective, layout.pack(start_mean, start_garch), nm);
    model.iterations += result.iterations;

    arima::MeanEquation eq = start_mean;
    GarchParams g = start_garch;
    if (result.converged && std::isfinite(result.value)) {
        eq = layout.mean(result.x);
        g = layout.garch(result.x, start_garch);
    } else if (have_two_stage) {
        model.degraded = true;
        if (!model.diagnostics.empty()) model.diagnostics += "; ";
        model.diagnostics += "joint refinement did not converge; using two-stage estimates";
        log::warning("ARIMA-GARCH" + arima::to_string(order) + ": " + model.diagnostics);
    } else {
        throw FitFailure("ARIMA-GARCH" + arima::to_string(order) + ": " + model.diagnostics +
                         " and joint refinement did not converge");
    }

    model.phi = eq.phi;
    model.theta = eq.theta;
    model.alpha = eq.alpha;
    model.garch = g;
    model.residuals = arima::arma_residuals(w, eq);
    model.cond_variances = variance_path(model.residuals, g, frozen);
    model.log_likelihood = gaussian_log_likelihood(model.residuals, model.cond_variances);
    model.aic = 2.0 * parameter_count(order, frozen) - 2.0 * model.log_likelihood;
    return model;
}

HybridForecast forecast_one_hybrid(const ArimaGarchModel& model, std::span<const double> history) {
    const arima::ArimaOrder& order = model.order;
    if (history.size() < arima::min_forecast_history(order)) {
        throw InsufficientData("forecast_one_hybrid: history too short for ARIMA" + arima::to_string(order));
    }
    const std::vector<double> w = series::difference(history, order.d).values;
    const arima::MeanEquation eq = model.mean_equation();
    const auto e = arima::arma_residuals(w, eq);

    HybridForecast out;
    out.price = series::integrate_next(history, order.d, arima::arma_predict_next(w, e, eq));
    if (model.homoskedastic || e.empty()) {
        out.variance = model.garch.omega;
    } else {
        const auto var = variance_path(e, model.garch, false);
        out.variance = next_variance(model.garch, e.back(), var.back());
    }
    return out;
}

}  // namespace quantcast::garch
