#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ftstat {

// Dense row-major matrix of doubles. Deliberately minimal; the numerics in
// this project are plain loops over contiguous rows.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

    double* row(int i) { return v.data() + static_cast<std::size_t>(i) * cols; }
    const double* row(int i) const { return v.data() + static_cast<std::size_t>(i) * cols; }

    std::span<double> row_span(int i) { return {row(i), static_cast<std::size_t>(cols)}; }
    std::span<const double> row_span(int i) const { return {row(i), static_cast<std::size_t>(cols)}; }

    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * cols + j]; }
};

} // namespace ftstat
