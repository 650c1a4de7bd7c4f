#include "quantcast/arima/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace quantcast::arima {

std::vector<double> partials_to_coefficients(std::span<const double> partials) {
    const std::size_t k = partials.size();
    std::vector<double> c(k, 0.0), prev(k, 0.0);
    for (std::size_t m = 0; m < k; ++m) {
        const double r = partials[m];
        c[m] = r;
        for (std::size_t j = 0; j < m; ++j) c[j] = prev[j] - r * prev[m - 1 - j];
        std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m + 1), prev.begin());
    }
    return c;
}

std::optional<std::vector<double>> coefficients_to_partials(std::span<const double> coeffs) {
    const std::size_t k = coeffs.size();
    std::vector<double> cur(coeffs.begin(), coeffs.end());
    std::vector<double> partials(k, 0.0);
    for (std::size_t m = k; m-- > 0;) {
        const double r = cur[m];
        if (!(std::abs(r) < 1.0)) return std::nullopt;
        partials[m] = r;
        const double denom = 1.0 - r * r;
        std::vector<double> next(m);
        for (std::size_t j = 0; j < m; ++j) next[j] = (cur[j] + r * cur[m - 1 - j]) / denom;
        cur = std::move(next);
    }
    return partials;
}

double min_root_modulus(std::span<const double> coeffs) {
    std::size_t k = coeffs.size();
    while (k > 0 && coeffs[k - 1] == 0.0) --k;
    if (k == 0) return std::numeric_limits<double>::infinity();
    // Roots of 1 - sum c_i z^i are reciprocals of the companion-matrix eigenvalues.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) companion(0, static_cast<Eigen::Index>(i)) = coeffs[i];
    for (std::size_t i = 1; i < k; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    double largest = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        largest = std::max(largest, std::abs(solver.eigenvalues()(i)));
    }
    return largest == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / largest;
}

double min_ma_root_modulus(std::span<const double> theta) {
    std::vector<double> neg(theta.size());
    std::transform(theta.begin(), theta.end(), neg.begin(), [](double t) { return -t; });
    return min_root_modulus(neg);
}

namespace {

std::vector<double> squash(std::span<const double> u) {
    std::vector<double> r(u.size());
    std::transform(u.begin(), u.end(), r.begin(),
                   [](double x) { return std::clamp(std::tanh(x), -kMaxPartial, kMaxPartial); });
    return r;
}

std::optional<std::vector<double>> unsquash(const std::optional<std::vector<double>>& partials) {
    if (!partials) return std::nullopt;
    std::vector<double> u(partials->size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = std::atanh(std::clamp((*partials)[i], -kMaxPartial, kMaxPartial));
    }
    return u;
}

}  // namespace

std::vector<double> ar_from_unconstrained(std::span<const double> u) {
    return partials_to_coefficients(squash(u));
}

std::vector<double> ma_from_unconstrained(std::span<const double> u) {
    auto psi = partials_to_coefficients(squash(u));
    for (auto& v : psi) v = -v;
    return psi;
}

std::optional<std::vector<double>> ar_to_unconstrained(std::span<const double> phi) {
    return unsquash(coefficients_to_partials(phi));
}

std::optional<std::vector<double>> ma_to_unconstrained(std::span<const double> theta) {
    std::vector<double> psi(theta.size());
    std::transform(theta.begin(), theta.end(), psi.begin(), [](double t) { return -t; });
    return unsquash(coefficients_to_partials(psi));
}

}  // namespace quantcast::arima
