#include "quantcast/neural/activation.hpp"

#include <cmath>

#include "quantcast/error.hpp"

namespace quantcast::neural {

std::string to_string(Activation a) {
    switch (a) {
        case Activation::identity: return "identity";
        case Activation::relu: return "relu";
        case Activation::elu: return "elu";
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
    }
    return "identity";
}

Activation activation_from_string(const std::string& s) {
    if (s == "identity" || s == "linear") return Activation::identity;
    if (s == "relu") return Activation::relu;
    if (s == "elu") return Activation::elu;
    if (s == "tanh") return Activation::tanh;
    if (s == "sigmoid") return Activation::sigmoid;
    throw InvalidArgument("unknown activation: " + s);
}

Eigen::ArrayXXd activate(Activation a, const Eigen::ArrayXXd& z) {
    switch (a) {
        case Activation::identity: return z;
        case Activation::relu: return z.max(0.0);
        case Activation::elu: return (z > 0.0).select(z, z.unaryExpr([](double v) { return std::expm1(v); }));
        case Activation::tanh: return z.tanh();
        case Activation::sigmoid: return 1.0 / (1.0 + (-z).exp());
    }
    return z;
}

Eigen::ArrayXXd activation_derivative(Activation a, const Eigen::ArrayXXd& z, const Eigen::ArrayXXd& y) {
    switch (a) {
        case Activation::identity: return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
        case Activation::relu: return (z > 0.0).cast<double>();
        case Activation::elu: return (z > 0.0).select(Eigen::ArrayXXd::Ones(z.rows(), z.cols()), y + 1.0);
        case Activation::tanh: return 1.0 - y.square();
        case Activation::sigmoid: return y * (1.0 - y);
    }
    return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
}

double activate(Activation a, double z) {
    switch (a) {
        case Activation::identity: return z;
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::elu: return z > 0.0 ? z : std::expm1(z);
        case Activation::tanh: return std::tanh(z);
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    }
    return z;
}

}  // namespace quantcast::neural
