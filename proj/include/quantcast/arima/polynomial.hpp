#pragma once

#include <optional>
#include <span>
#include <vector>

namespace quantcast::arima {

/// Largest |partial| the reparameterisation will produce; keeps roots strictly outside
/// the unit circle even when tanh saturates.
inline constexpr double kMaxPartial = 1.0 - 1e-8;

/// Partial autocorrelations in (-1, 1) -> coefficients c of a stationary
/// 1 - c_1 z - ... - c_k z^k (Durbin-Levinson step-up).
std::vector<double> partials_to_coefficients(std::span<const double> partials);

/// Inverse step-down recursion. Returns nullopt when the polynomial is not stationary.
std::optional<std::vector<double>> coefficients_to_partials(std::span<const double> coeffs);

/// Smallest root modulus of 1 - c_1 z - ... - c_k z^k (infinity when k == 0).
double min_root_modulus(std::span<const double> coeffs);

/// Unconstrained values -> AR coefficients phi (stationary).
std::vector<double> ar_from_unconstrained(std::span<const double> u);
/// Unconstrained values -> MA coefficients theta with 1 + theta_1 z + ... invertible.
std::vector<double> ma_from_unconstrained(std::span<const double> u);

std::optional<std::vector<double>> ar_to_unconstrained(std::span<const double> phi);
std::optional<std::vector<double>> ma_to_unconstrained(std::span<const double> theta);

/// Root check for the MA side: 1 + theta_1 z + ... + theta_q z^q.
double min_ma_root_modulus(std::span<const double> theta);

}  // namespace quantcast::arima
