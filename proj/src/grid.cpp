#include "ftstat/grid.hpp"

#include <cmath>
#include <string>

namespace ftstat {

Grid::Grid(int size) {
    if (size < 1) {
        throw DimensionError("grid size must be >= 1, got " + std::to_string(size));
    }
    points_.resize(static_cast<std::size_t>(size));
    for (int g = 0; g < size; ++g) {
        points_[static_cast<std::size_t>(g)] = (2.0 * g + 1.0) / (2.0 * size);
    }
}

FunctionalSeries::FunctionalSeries(Grid grid, std::vector<double> data)
    : grid_(std::move(grid)), data_(std::move(data)) {
    const int G = grid_.size();
    if (data_.empty() || data_.size() % static_cast<std::size_t>(G) != 0) {
        throw DimensionError("series data size " + std::to_string(data_.size()) +
                             " is not a multiple of grid size " + std::to_string(G));
    }
    T_ = static_cast<int>(data_.size() / static_cast<std::size_t>(G));
    if (T_ < 2) {
        throw DimensionError("a functional series needs T >= 2 curves, got " +
                             std::to_string(T_));
    }
    for (double x : data_) {
        if (!std::isfinite(x)) {
            throw DimensionError("series data contains a non-finite value");
        }
    }
}

double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& grid) {
    const auto G = static_cast<std::size_t>(grid.size());
    if (a.size() != G || b.size() != G) {
        throw DimensionError("l2_inner: curve lengths " + std::to_string(a.size()) + ", " +
                             std::to_string(b.size()) + " do not match grid size " +
                             std::to_string(G));
    }
    double s = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
        s += a[g] * b[g];
    }
    return s / static_cast<double>(G);
}

double field_l2_norm_sq(std::span<const double> field, std::span<const Axis> axes) {
    std::size_t expected = 1;
    double weight = 1.0;
    for (const Axis& ax : axes) {
        if (ax.size == 0) {
            throw DimensionError("field_l2_norm_sq: axis of size 0");
        }
        expected *= ax.size;
        weight *= ax.weight;
    }
    if (field.size() != expected) {
        throw DimensionError("field_l2_norm_sq: field length " + std::to_string(field.size()) +
                             " does not match product of axis sizes " + std::to_string(expected));
    }
    double s = 0.0;
    for (double x : field) {
        s += x * x;
    }
    return weight * s;
}

} // namespace ftstat
