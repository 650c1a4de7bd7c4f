#pragma once

#include <Eigen/Dense>

#include "quantcast/neural/config.hpp"

namespace quantcast::neural {

Eigen::ArrayXXd activate(Activation a, const Eigen::ArrayXXd& z);

/// d act / dz evaluated elementwise, given the pre-activation z and its image y = act(z).
Eigen::ArrayXXd activation_derivative(Activation a, const Eigen::ArrayXXd& z, const Eigen::ArrayXXd& y);

double activate(Activation a, double z);

}  // namespace quantcast::neural
