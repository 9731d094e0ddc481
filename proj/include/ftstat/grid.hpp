#pragma once

#include <span>
#include <vector>

#include "ftstat/errors.hpp"

namespace ftstat {

// Midpoint grid on [0,1]: tau_g = (2g+1)/(2G) for g = 0..G-1 (0-based).
// Every point carries quadrature weight 1/G, so the midpoint rule
// integrates constants exactly and smooth integrands with O(G^-2) error.
class Grid {
public:
    explicit Grid(int size);

    int size() const { return static_cast<int>(points_.size()); }
    double point(int g) const { return points_[static_cast<std::size_t>(g)]; }
    std::span<const double> points() const { return points_; }
    double cell_weight() const { return 1.0 / size(); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::vector<double> points_;
};

// A single curve sampled on a Grid. Invariants (length == G, finite values)
// are enforced where curves enter a FunctionalSeries.
using Curve = std::vector<double>;

// T curves on a common grid, stored row-major (row t = observation t+1 in
// the usual 1-based time indexing).
class FunctionalSeries {
public:
    FunctionalSeries(Grid grid, std::vector<double> data);

    int length() const { return T_; }
    int grid_size() const { return grid_.size(); }
    const Grid& grid() const { return grid_; }

    std::span<const double> curve(int t) const {
        return {data_.data() + static_cast<std::size_t>(t) * grid_.size(),
                static_cast<std::size_t>(grid_.size())};
    }
    std::span<const double> data() const { return data_; }

private:
    Grid grid_;
    int T_ = 0;
    std::vector<double> data_;
};

// Midpoint-rule inner product (1/G) sum_g a_g b_g, approximating the
// L2([0,1]) inner product of the curves.
double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& grid);

struct Axis {
    std::size_t size = 0;
    double weight = 0.0; // quadrature weight per cell along this axis
};

// Weighted sum of squared entries of a field flattened over a product grid:
// prod_axis(weight) * sum_x field(x)^2. Axis sizes must multiply to the
// field length.
double field_l2_norm_sq(std::span<const double> field, std::span<const Axis> axes);

} // namespace ftstat
