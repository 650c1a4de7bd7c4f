#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quantcast/series/price_series.hpp"

namespace quantcast::series {

/// d-th order differences of a series plus what is needed to undo them.
struct DifferencedSeries {
    std::vector<double> values;   // |values| == origin_length - order
    int order = 0;
    std::vector<double> anchors;  // last `order` original values
    std::size_t origin_length = 0;
};

DifferencedSeries difference(std::span<const double> values, int d);

/// Exact inverse of difference(); reconstructs the series backwards from the anchors.
std::vector<double> integrate(const DifferencedSeries& diffs);

/// Maps a forecast of the next d-th difference to the next level value, given the
/// observed history (at least d values).
double integrate_next(std::span<const double> history, int d, double next_difference);

struct SplitSpec {
    double train_fraction = 0.9;
    double validation_fraction = 0.0;
    double test_fraction = 0.1;
};

/// Segment boundaries: train = [0, train_end), validation = [train_end, validation_end),
/// test = [validation_end, n).
struct SplitBounds {
    std::size_t train_end = 0;
    std::size_t validation_end = 0;
    std::size_t n = 0;

    std::size_t train_size() const { return train_end; }
    std::size_t validation_size() const { return validation_end - train_end; }
    std::size_t test_size() const { return n - validation_end; }
};

/// floor() of cumulative fractions; remainder goes to the final segment. Every segment
/// with a non-zero fraction must receive at least 2 points.
SplitBounds split_bounds(std::size_t n, const SplitSpec& spec);

struct SplitSegments {
    PriceSeries train;
    std::optional<PriceSeries> validation;
    std::optional<PriceSeries> test;
};

SplitSegments split(const PriceSeries& series, const SplitSpec& spec);

/// Min-max scaler onto [0, 1] over the fitted sample; extrapolates linearly outside it.
class MinMaxNormalizer {
public:
    MinMaxNormalizer(double fitted_min, double fitted_max);

    static MinMaxNormalizer fit(std::span<const double> values);

    double transform(double x) const { return (x - min_) / (max_ - min_); }
    double inverse_transform(double z) const { return z * (max_ - min_) + min_; }
    std::vector<double> transform(std::span<const double> xs) const;
    std::vector<double> inverse_transform(std::span<const double> zs) const;

    double fitted_min() const { return min_; }
    double fitted_max() const { return max_; }

private:
    double min_;
    double max_;
};

struct SupervisedWindowSet {
    std::size_t look_back = 0;
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    std::vector<std::size_t> target_indices;  // position of each target in the source
};

/// Window i = values[i .. i + look_back), target = values[i + look_back].
SupervisedWindowSet make_windows(std::span<const double> values, std::size_t look_back);

}  // namespace quantcast::series
