#include "quantcast/optim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "quantcast/error.hpp"

namespace quantcast::optim {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;
};

double safe_eval(const Objective& f, std::span<const double> x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

Simplex build_simplex(const Objective& f, const std::vector<double>& origin,
                      const std::vector<double>& steps) {
    const std::size_t n = origin.size();
    Simplex s;
    s.points.push_back(origin);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = origin;
        p[i] += steps[i];
        s.points.push_back(std::move(p));
    }
    for (const auto& p : s.points) s.values.push_back(safe_eval(f, p));
    return s;
}

// One descent from a fresh simplex. Returns the iterations used; the best vertex is
// left at index 0.
int descend(const Objective& f, Simplex& s, int budget, double f_tol, bool& converged) {
    const std::size_t n = s.points.size() - 1;
    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    int it = 0;
    converged = false;

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
        Simplex sorted;
        for (auto i : order) {
            sorted.points.push_back(std::move(s.points[i]));
            sorted.values.push_back(s.values[i]);
        }
        s = std::move(sorted);
    };

    sort_simplex();
    while (it < budget) {
        const double spread = s.values[n] - s.values[0];
        if (std::isfinite(s.values[n]) && spread <= f_tol) {
            converged = true;
            break;
        }
        ++it;
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += s.points[i][j];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        const auto& worst = s.points[n];
        for (std::size_t j = 0; j < n; ++j) trial[j] = centroid[j] + kReflect * (centroid[j] - worst[j]);
        const double f_reflect = safe_eval(f, trial);

        if (f_reflect < s.values[0]) {
            for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kExpand * (trial[j] - centroid[j]);
            const double f_expand = safe_eval(f, trial2);
            if (f_expand < f_reflect) {
                s.points[n] = trial2;
                s.values[n] = f_expand;
            } else {
                s.points[n] = trial;
                s.values[n] = f_reflect;
            }
        } else if (f_reflect < s.values[n - 1]) {
            s.points[n] = trial;
            s.values[n] = f_reflect;
        } else {
            const bool outside = f_reflect < s.values[n];
            const auto& base = outside ? trial : worst;
            for (std::size_t j = 0; j < n; ++j) trial2[j] = centroid[j] + kContract * (base[j] - centroid[j]);
            const double f_contract = safe_eval(f, trial2);
            if (f_contract < std::min(f_reflect, s.values[n])) {
                s.points[n] = trial2;
                s.values[n] = f_contract;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        s.points[i][j] = s.points[0][j] + kShrink * (s.points[i][j] - s.points[0][j]);
                    }
                    s.values[i] = safe_eval(f, s.points[i]);
                }
            }
        }
        sort_simplex();
    }
    return it;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    NelderMeadResult result;
    if (n == 0) {
        result.value = safe_eval(f, start);
        result.converged = std::isfinite(result.value);
        return result;
    }
    if (options.initial_step.empty()) throw InvalidArgument("nelder_mead: empty initial_step");
    std::vector<double> steps(n);
    for (std::size_t i = 0; i < n; ++i) {
        steps[i] = options.initial_step.size() == 1 ? options.initial_step[0] : options.initial_step.at(i);
    }

    Simplex s = build_simplex(f, start, steps);
    int used = 0;
    bool converged = false;
    used += descend(f, s, options.max_iterations, options.f_tolerance, converged);

    for (int r = 0; r < options.max_restarts && converged && used < options.max_iterations; ++r) {
        const double before = s.values[0];
        Simplex again = build_simplex(f, s.points[0], steps);
        bool again_converged = false;
        used += descend(f, again, options.max_iterations - used, options.f_tolerance, again_converged);
        const double gain = before - again.values[0];
        if (again.values[0] <= s.values[0]) s = std::move(again);
        if (!again_converged || gain <= options.f_tolerance) break;
    }

    result.x = std::move(s.points[0]);
    result.value = s.values[0];
    result.iterations = used;
    result.converged = converged && std::isfinite(result.value);
    return result;
}

}  // namespace quantcast::optim
