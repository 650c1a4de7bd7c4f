#pragma once

#include <functional>
#include <span>
#include <vector>

namespace quantcast::optim {

struct NelderMeadOptions {
    int max_iterations = 2000;
    /// Converged when max - min objective over the simplex falls below this.
    double f_tolerance = 1e-8;
    /// Initial simplex offsets per coordinate; a single value is broadcast.
    std::vector<double> initial_step{0.1};
    /// Re-seed the simplex at the best vertex after convergence; stops when a restart
    /// fails to improve by more than f_tolerance.
    int max_restarts = 2;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free minimisation. Non-finite objective values are treated as +inf, so
/// infeasible points are simply rejected by the simplex moves.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

}  // namespace quantcast::optim
