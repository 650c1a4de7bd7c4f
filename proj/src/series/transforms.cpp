#include "quantcast/series/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quantcast/error.hpp"

namespace quantcast::series {

namespace {

std::vector<double> first_differences(std::span<const double> xs) {
    std::vector<double> out;
    if (xs.size() < 2) return out;
    out.reserve(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) out.push_back(xs[i] - xs[i - 1]);
    return out;
}

}  // namespace

DifferencedSeries difference(std::span<const double> values, int d) {
    if (d < 0) throw InvalidArgument("difference: order must be non-negative");
    if (values.size() <= static_cast<std::size_t>(d)) {
        throw InvalidArgument("difference: series length " + std::to_string(values.size()) +
                              " must exceed order " + std::to_string(d));
    }
    DifferencedSeries out;
    out.order = d;
    out.origin_length = values.size();
    out.anchors.assign(values.end() - d, values.end());
    out.values.assign(values.begin(), values.end());
    for (int k = 0; k < d; ++k) out.values = first_differences(out.values);
    return out;
}

std::vector<double> integrate(const DifferencedSeries& diffs) {
    const auto d = static_cast<std::size_t>(diffs.order);
    if (diffs.anchors.size() != d) {
        throw InvalidState("integrate: expected " + std::to_string(d) + " anchors, found " +
                           std::to_string(diffs.anchors.size()));
    }
    if (diffs.values.size() + d != diffs.origin_length) {
        throw InvalidState("integrate: value count inconsistent with origin length");
    }
    if (d == 0) return diffs.values;

    // tails[k] = last element of the k-th difference level.
    std::vector<double> tails(d);
    std::vector<double> level = diffs.anchors;
    for (std::size_t k = 0; k < d; ++k) {
        tails[k] = level.back();
        level = first_differences(level);
    }

    std::vector<double> current = diffs.values;
    for (std::size_t k = d; k-- > 0;) {
        std::vector<double> up(current.size() + 1);
        up.back() = tails[k];
        for (std::size_t i = current.size(); i-- > 0;) up[i] = up[i + 1] - current[i];
        current = std::move(up);
    }
    return current;
}

double integrate_next(std::span<const double> history, int d, double next_difference) {
    if (d < 0) throw InvalidArgument("integrate_next: order must be non-negative");
    if (history.size() < static_cast<std::size_t>(d)) {
        throw InsufficientData("integrate_next: history shorter than differencing order");
    }
    // x_{n} = w_n - sum_{k=1..d} (-1)^k C(d,k) x_{n-k}
    double level = next_difference;
    double binom = 1.0;
    for (int k = 1; k <= d; ++k) {
        binom = binom * (d - k + 1) / k;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        level += sign * binom * history[history.size() - static_cast<std::size_t>(k)];
    }
    return level;
}

SplitBounds split_bounds(std::size_t n, const SplitSpec& spec) {
    const double fr[3] = {spec.train_fraction, spec.validation_fraction, spec.test_fraction};
    for (double f : fr) {
        if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("split: fractions must lie in [0, 1]");
    }
    if (std::abs(fr[0] + fr[1] + fr[2] - 1.0) > 1e-9) {
        throw InvalidArgument("split: fractions must sum to 1");
    }
    if (fr[0] == 0.0) throw InvalidArgument("split: training fraction must be positive");

    // Small epsilon so that e.g. 0.8 * 100 is not floored to 79 by representation error.
    auto boundary = [n](double cumulative) {
        return std::min(n, static_cast<std::size_t>(std::floor(cumulative * static_cast<double>(n) + 1e-9)));
    };
    SplitBounds b;
    b.n = n;
    b.train_end = boundary(fr[0]);
    b.validation_end = fr[2] == 0.0 ? n : boundary(fr[0] + fr[1]);

    const std::size_t sizes[3] = {b.train_size(), b.validation_size(), b.test_size()};
    const char* names[3] = {"train", "validation", "test"};
    for (int i = 0; i < 3; ++i) {
        if (fr[i] > 0.0 && sizes[i] < 2) {
            throw InvalidArgument(std::string("split: ") + names[i] + " segment has " +
                                  std::to_string(sizes[i]) + " points (need >= 2)");
        }
    }
    return b;
}

SplitSegments split(const PriceSeries& series, const SplitSpec& spec) {
    const SplitBounds b = split_bounds(series.size(), spec);
    SplitSegments out{series.slice(0, b.train_size()), std::nullopt, std::nullopt};
    if (b.validation_size() > 0) out.validation = series.slice(b.train_end, b.validation_size());
    if (b.test_size() > 0) out.test = series.slice(b.validation_end, b.test_size());
    return out;
}

MinMaxNormalizer::MinMaxNormalizer(double fitted_min, double fitted_max)
    : min_(fitted_min), max_(fitted_max) {
    if (!(std::isfinite(min_) && std::isfinite(max_)) || !(max_ > min_)) {
        throw InvalidArgument("MinMaxNormalizer: degenerate scale (max must exceed min)");
    }
}

MinMaxNormalizer MinMaxNormalizer::fit(std::span<const double> values) {
    if (values.size() < 2) throw InvalidArgument("MinMaxNormalizer: need at least 2 values");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return MinMaxNormalizer(*lo, *hi);
}

std::vector<double> MinMaxNormalizer::transform(std::span<const double> xs) const {
    std::vector<double> out(xs.size());
    std::transform(xs.begin(), xs.end(), out.begin(), [this](double x) { return transform(x); });
    return out;
}

std::vector<double> MinMaxNormalizer::inverse_transform(std::span<const double> zs) const {
    std::vector<double> out(zs.size());
    std::transform(zs.begin(), zs.end(), out.begin(),
                   [this](double z) { return inverse_transform(z); });
    return out;
}

SupervisedWindowSet make_windows(std::span<const double> values, std::size_t look_back) {
    if (look_back < 1) throw InvalidArgument("make_windows: look_back must be >= 1");
    if (values.size() <= look_back) {
        throw InvalidArgument("make_windows: series length " + std::to_string(values.size()) +
                              " must exceed look_back " + std::to_string(look_back));
    }
    SupervisedWindowSet set;
    set.look_back = look_back;
    const std::size_t count = values.size() - look_back;
    set.inputs.reserve(count);
    set.targets.reserve(count);
    set.target_indices.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        set.inputs.emplace_back(values.begin() + i, values.begin() + i + look_back);
        set.targets.push_back(values[i + look_back]);
        set.target_indices.push_back(i + look_back);
    }
    return set;
}

}  // namespace quantcast::series
