#include "ftstat/cusum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftstat/errors.hpp"

namespace ftstat {

namespace {

// Fill rows j = 1..T of `partials` with running sums of scaled terms; rows
// j > T_eff repeat row T_eff. `emit_term` writes term_t / sqrt(T) for the
// 1-based time index t into the supplied buffer.
template <typename EmitTerm>
void fill_partials(Matrix& partials, int T, int T_eff, EmitTerm emit_term) {
    const int D = partials.cols;
    std::vector<double> term(static_cast<std::size_t>(D));
    for (int j = 1; j <= T; ++j) {
        const double* prev = partials.row(j - 1);
        double* cur = partials.row(j);
        if (j <= T_eff) {
            emit_term(j, term.data());
            for (int d = 0; d < D; ++d) {
                cur[d] = prev[d] + term[d];
            }
        } else {
            std::copy(prev, prev + D, cur);
        }
    }
}

} // namespace

CusumDecomposition cusum_mean(const FunctionalSeries& series) {
    const int T = series.length();
    const int G = series.grid_size();
    CusumDecomposition c;
    c.kind = CusumKind::Mean;
    c.T = T;
    c.dim = G;
    c.cell_weight = series.grid().cell_weight();
    c.partials = Matrix(T + 1, G);
    const double inv_sqrt_T = 1.0 / std::sqrt(static_cast<double>(T));
    fill_partials(c.partials, T, T, [&](int t, double* out) {
        const auto x = series.curve(t - 1);
        for (int g = 0; g < G; ++g) {
            out[g] = x[static_cast<std::size_t>(g)] * inv_sqrt_T;
        }
    });
    return c;
}

CusumDecomposition cusum_lag(const FunctionalSeries& series, int h) {
    const int T = series.length();
    const int G = series.grid_size();
    if (h < 0 || h > T - 2) {
        throw InvalidLagError("lag h must satisfy 0 <= h <= T-2, got h=" + std::to_string(h) +
                              " with T=" + std::to_string(T));
    }
    const double entries = static_cast<double>(G) * G * T;
    if (entries > 1e8) {
        throw ConfigError("lag decomposition would hold G^2*T = " + std::to_string(entries) +
                          " entries, above the 1e8 cap");
    }
    CusumDecomposition c;
    c.kind = CusumKind::Lag;
    c.h = h;
    c.T = T;
    c.dim = G * G;
    const double w = series.grid().cell_weight();
    c.cell_weight = w * w;
    c.partials = Matrix(T + 1, G * G);
    const double inv_sqrt_T = 1.0 / std::sqrt(static_cast<double>(T));
    fill_partials(c.partials, T, T - h, [&](int t, double* out) {
        const auto x = series.curve(t - 1);
        const auto y = series.curve(t - 1 + h);
        for (int g1 = 0; g1 < G; ++g1) {
            const double xs = x[static_cast<std::size_t>(g1)] * inv_sqrt_T;
            double* row = out + static_cast<std::size_t>(g1) * G;
            for (int g2 = 0; g2 < G; ++g2) {
                row[g2] = xs * y[static_cast<std::size_t>(g2)];
            }
        }
    });
    return c;
}

double stat_l2(const CusumDecomposition& c) {
    const int T = c.T;
    const int D = c.dim;
    const int T_eff = c.effective_length();
    const double* B = c.total();
    double b_norm_sq = 0.0;
    for (int d = 0; d < D; ++d) {
        b_norm_sq += B[d] * B[d];
    }
    double integral = 0.0;
    for (int j = 0; j < T; ++j) {
        const double a = static_cast<double>(j) / T;
        const double b = static_cast<double>(j + 1) / T;
        const double* A = c.partials.row(std::min(j, T_eff));
        double a_norm_sq = 0.0;
        double ab = 0.0;
        for (int d = 0; d < D; ++d) {
            a_norm_sq += A[d] * A[d];
            ab += A[d] * B[d];
        }
        integral += a_norm_sq * (b - a) - ab * (b * b - a * a) +
                    b_norm_sq * (b * b * b - a * a * a) / 3.0;
    }
    return std::sqrt(std::max(0.0, c.cell_weight * integral));
}

double stat_l2_riemann(const CusumDecomposition& c, int subdiv) {
    if (subdiv < c.T) {
        throw ConfigError("stat_l2_riemann needs subdiv >= T");
    }
    const int T = c.T;
    const int D = c.dim;
    const int T_eff = c.effective_length();
    const double* B = c.total();
    double sum = 0.0;
    for (int s = 0; s < subdiv; ++s) {
        const double u = (s + 0.5) / subdiv;
        const int j = std::min(static_cast<int>(std::floor(u * T)), T_eff);
        const double* A = c.partials.row(j);
        double cell = 0.0;
        for (int d = 0; d < D; ++d) {
            const double val = A[d] - u * B[d];
            cell += val * val;
        }
        sum += cell;
    }
    return std::sqrt(std::max(0.0, c.cell_weight * sum / subdiv));
}

std::vector<double> nonstat_measures(const FunctionalSeries& series, int H) {
    const int T = series.length();
    if (H < 0 || H > T - 2) {
        throw InvalidLagError("nonstat_measures needs 0 <= H <= T-2");
    }
    const double inv_sqrt_T = 1.0 / std::sqrt(static_cast<double>(T));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(H) + 2);
    out.push_back(stat_l2(cusum_mean(series)) * inv_sqrt_T);
    for (int h = 0; h <= H; ++h) {
        out.push_back(stat_l2(cusum_lag(series, h)) * inv_sqrt_T);
    }
    return out;
}

} // namespace ftstat
