#include "ftstat/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftstat/cusum.hpp"
#include "ftstat/errors.hpp"
#include "ftstat/parallel.hpp"
#include "ftstat/rng.hpp"

namespace ftstat {

namespace {

// Substream id space for replicate multiplier streams; keeps them disjoint
// from other consumers of the same master seed.
constexpr std::uint64_t kMultiplierStreamTag = 0xB00757 /* "bootst" */;

struct Window {
    int lo;  // 1-based first index
    int hi;  // 1-based last index
    int cnt; // hi - lo + 1
};

// Clamped two-sided window around 1-based t for lag h:
// j in [max(-n, 1-t), min(n, T-t-h)].
Window clamped_window(int t, int n, int T, int h) {
    Window w;
    w.lo = std::max(t - n, 1);
    w.hi = std::min(t + n, T - h);
    w.cnt = w.hi - w.lo + 1;
    return w;
}

// Prefix rows P_0 = 0, P_r = sum_{t<=r} row_t for a (rows x dim) matrix.
Matrix prefix_rows(const Matrix& mat) {
    Matrix p(mat.rows + 1, mat.cols);
    for (int r = 1; r <= mat.rows; ++r) {
        const double* prev = p.row(r - 1);
        const double* add = mat.row(r - 1);
        double* cur = p.row(r);
        for (int d = 0; d < mat.cols; ++d) {
            cur[d] = prev[d] + add[d];
        }
    }
    return p;
}

Matrix lag_terms(const FunctionalSeries& series, int h) {
    const int T = series.length();
    const int G = series.grid_size();
    Matrix terms(T - h, G * G);
    for (int t = 0; t < T - h; ++t) {
        const auto x = series.curve(t);
        const auto y = series.curve(t + h);
        double* row = terms.row(t);
        for (int g1 = 0; g1 < G; ++g1) {
            const double xs = x[static_cast<std::size_t>(g1)];
            double* out = row + static_cast<std::size_t>(g1) * G;
            for (int g2 = 0; g2 < G; ++g2) {
                out[g2] = xs * y[static_cast<std::size_t>(g2)];
            }
        }
    }
    return terms;
}

// Centered block sums W_i = scale * sum_{t=i}^{min(i+m-1, Te)} (term_t - mu_t),
// i = 1..Te, with scale = 1/sqrt(mT) folded in.
Matrix block_sums(const Matrix& terms, const Matrix& mu, int m, int T, double scale) {
    const int Te = terms.rows;
    const int D = terms.cols;
    Matrix centered(Te, D);
    for (int t = 0; t < Te; ++t) {
        const double* a = terms.row(t);
        const double* b = mu.row(t);
        double* out = centered.row(t);
        for (int d = 0; d < D; ++d) {
            out[d] = a[d] - b[d];
        }
    }
    (void)T;
    Matrix prefix = prefix_rows(centered);
    centered = Matrix();
    Matrix w(Te, D);
    for (int i = 1; i <= Te; ++i) {
        const int hi = std::min(i + m - 1, Te);
        const double* top = prefix.row(hi);
        const double* bot = prefix.row(i - 1);
        double* out = w.row(i - 1);
        for (int d = 0; d < D; ++d) {
            out[d] = scale * (top[d] - bot[d]);
        }
    }
    return w;
}

// Gram matrix of the block sums under the tau-quadrature:
// Q[i][j] = cell_weight * <W_i, W_j>.
Matrix gram_matrix(const Matrix& w, double cell_weight, int jobs) {
    const int Te = w.rows;
    const int D = w.cols;
    Matrix q(Te, Te);
    parallel_for(Te, jobs, [&](int i) {
        const double* wi = w.row(i);
        for (int j = i; j < Te; ++j) {
            const double* wj = w.row(j);
            double dot = 0.0;
            for (int d = 0; d < D; ++d) {
                dot += wi[d] * wj[d];
            }
            q.at(i, j) = cell_weight * dot;
        }
    });
    for (int i = 0; i < Te; ++i) {
        for (int j = 0; j < i; ++j) {
            q.at(i, j) = q.at(j, i);
        }
    }
    return q;
}

// L2 statistic of G(u) = P_{min(floor(uT), Te)} - u P_Te, with
// P_q = sum_{i<=q} R_i W_i, evaluated from the Gram matrix alone. Uses the
// same closed-form interval integrals as stat_l2.
double replicate_stat(const Matrix& q, int T, std::span<const double> r) {
    const int Te = q.rows;
    // c[i] = sum_j R_j Q[i][j];  s[i] = sum_{j<i} R_j Q[i][j] (Q symmetric).
    std::vector<double> c(static_cast<std::size_t>(Te));
    std::vector<double> s(static_cast<std::size_t>(Te));
    for (int i = 0; i < Te; ++i) {
        const double* qi = q.row(i);
        double full = 0.0;
        double low = 0.0;
        for (int j = 0; j < i; ++j) {
            low += r[static_cast<std::size_t>(j)] * qi[j];
        }
        full = low;
        for (int j = i; j < Te; ++j) {
            full += r[static_cast<std::size_t>(j)] * qi[j];
        }
        c[static_cast<std::size_t>(i)] = full;
        s[static_cast<std::size_t>(i)] = low;
    }
    // norm_sq[q] = |P_q|^2, dot_total[q] = <P_q, P_Te>.
    std::vector<double> norm_sq(static_cast<std::size_t>(Te) + 1, 0.0);
    std::vector<double> dot_total(static_cast<std::size_t>(Te) + 1, 0.0);
    for (int i = 1; i <= Te; ++i) {
        const double ri = r[static_cast<std::size_t>(i - 1)];
        norm_sq[static_cast<std::size_t>(i)] =
            norm_sq[static_cast<std::size_t>(i - 1)] +
            2.0 * ri * s[static_cast<std::size_t>(i - 1)] + ri * ri * q.at(i - 1, i - 1);
        dot_total[static_cast<std::size_t>(i)] =
            dot_total[static_cast<std::size_t>(i - 1)] + ri * c[static_cast<std::size_t>(i - 1)];
    }
    const double total_sq = dot_total[static_cast<std::size_t>(Te)];
    double integral = 0.0;
    for (int j = 0; j < T; ++j) {
        const double a = static_cast<double>(j) / T;
        const double b = static_cast<double>(j + 1) / T;
        const auto idx = static_cast<std::size_t>(std::min(j, Te));
        integral += norm_sq[idx] * (b - a) - dot_total[idx] * (b * b - a * a) +
                    total_sq * (b * b * b - a * a * a) / 3.0;
    }
    return std::sqrt(std::max(0.0, integral));
}

} // namespace

void validate_config(const BootstrapConfig& cfg, int T) {
    if (T < 2) {
        throw ConfigError("series length T must be >= 2");
    }
    if (cfg.m < 1 || cfg.m > T) {
        throw ConfigError("block length m must be in [1, T], got m=" + std::to_string(cfg.m));
    }
    if (cfg.n < 1 || cfg.n > T) {
        throw ConfigError("bandwidth n must be in [1, T], got n=" + std::to_string(cfg.n));
    }
    if (cfg.K < 1) {
        throw ConfigError("K must be >= 1, got K=" + std::to_string(cfg.K));
    }
    if (cfg.H < 0 || cfg.H > T - 2) {
        throw ConfigError("maximum lag H must be in [0, T-2], got H=" + std::to_string(cfg.H));
    }
}

Matrix local_mean(const FunctionalSeries& series, int n) {
    const int T = series.length();
    const int G = series.grid_size();
    if (n < 1 || n > T) {
        throw ConfigError("bandwidth n must be in [1, T]");
    }
    Matrix rows(T, G);
    for (int t = 0; t < T; ++t) {
        std::copy(series.curve(t).begin(), series.curve(t).end(), rows.row(t));
    }
    Matrix prefix = prefix_rows(rows);
    Matrix mu(T, G);
    for (int t = 1; t <= T; ++t) {
        const Window w = clamped_window(t, n, T, 0);
        const double inv = 1.0 / w.cnt;
        const double* top = prefix.row(w.hi);
        const double* bot = prefix.row(w.lo - 1);
        double* out = mu.row(t - 1);
        for (int g = 0; g < G; ++g) {
            out[g] = inv * (top[g] - bot[g]);
        }
    }
    return mu;
}

Matrix local_cross_mean(const FunctionalSeries& series, int n, int h) {
    const int T = series.length();
    if (h < 0 || h > T - 2) {
        throw InvalidLagError("lag h must satisfy 0 <= h <= T-2");
    }
    if (n < 1 || n > T) {
        throw ConfigError("bandwidth n must be in [1, T]");
    }
    Matrix terms = lag_terms(series, h);
    Matrix prefix = prefix_rows(terms);
    Matrix mu(T - h, terms.cols);
    for (int t = 1; t <= T - h; ++t) {
        const Window w = clamped_window(t, n, T, h);
        const double inv = 1.0 / w.cnt;
        const double* top = prefix.row(w.hi);
        const double* bot = prefix.row(w.lo - 1);
        double* out = mu.row(t - 1);
        for (int d = 0; d < terms.cols; ++d) {
            out[d] = inv * (top[d] - bot[d]);
        }
    }
    return mu;
}

std::vector<double> normal_multipliers(std::uint64_t seed, int k, int count) {
    NormalSampler sampler(substream_seed(substream_seed(seed, kMultiplierStreamTag),
                                         static_cast<std::uint64_t>(k)));
    std::vector<double> r(static_cast<std::size_t>(count));
    for (auto& x : r) {
        x = sampler.next();
    }
    return r;
}

BootstrapEnsemble bootstrap_ensemble(const FunctionalSeries& series, const BootstrapConfig& cfg,
                                     int jobs) {
    const std::uint64_t seed = cfg.seed;
    return bootstrap_ensemble(
        series, cfg,
        [seed, T = series.length()](int k) { return normal_multipliers(seed, k, T); }, jobs);
}

BootstrapEnsemble bootstrap_ensemble(const FunctionalSeries& series, const BootstrapConfig& cfg,
                                     const MultiplierSource& multipliers, int jobs) {
    const int T = series.length();
    validate_config(cfg, T);
    const int G = series.grid_size();
    const int n_stats = cfg.H + 2;
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.m) * T);

    BootstrapEnsemble ens;
    ens.config = cfg;
    ens.T = T;
    ens.G = G;
    ens.observed.resize(static_cast<std::size_t>(n_stats));
    ens.replicates = Matrix(cfg.K, n_stats);

    // One Gram matrix per statistic; the block sums themselves are only
    // needed long enough to form it.
    std::vector<Matrix> grams(static_cast<std::size_t>(n_stats));
    std::vector<int> eff_len(static_cast<std::size_t>(n_stats));
    {
        ens.observed[0] = stat_l2(cusum_mean(series));
        Matrix terms(T, G);
        for (int t = 0; t < T; ++t) {
            std::copy(series.curve(t).begin(), series.curve(t).end(), terms.row(t));
        }
        Matrix w = block_sums(terms, local_mean(series, cfg.n), cfg.m, T, scale);
        grams[0] = gram_matrix(w, series.grid().cell_weight(), jobs);
        eff_len[0] = T;
    }
    const double cell_weight_2d = series.grid().cell_weight() * series.grid().cell_weight();
    for (int h = 0; h <= cfg.H; ++h) {
        ens.observed[static_cast<std::size_t>(h) + 1] = stat_l2(cusum_lag(series, h));
        Matrix terms = lag_terms(series, h);
        Matrix w = block_sums(terms, local_cross_mean(series, cfg.n, h), cfg.m, T, scale);
        terms = Matrix();
        grams[static_cast<std::size_t>(h) + 1] = gram_matrix(w, cell_weight_2d, jobs);
        eff_len[static_cast<std::size_t>(h) + 1] = T - h;
    }

    parallel_for(cfg.K, jobs, [&](int idx) {
        const int k = idx + 1;
        const std::vector<double> r = multipliers(k);
        if (r.size() < static_cast<std::size_t>(T)) {
            throw ConfigError("multiplier source returned fewer than T values");
        }
        double* out = ens.replicates.row(idx);
        for (int s = 0; s < n_stats; ++s) {
            out[s] = replicate_stat(grams[static_cast<std::size_t>(s)], T,
                                    std::span<const double>(r).first(
                                        static_cast<std::size_t>(eff_len[static_cast<std::size_t>(s)])));
        }
    });
    return ens;
}

double individual_pvalue(const BootstrapEnsemble& ensemble, int h_index) {
    const int col = h_index + 1;
    if (col < 0 || col >= ensemble.replicates.cols) {
        throw ConfigError("h_index must be in [-1, H]");
    }
    const double observed = ensemble.observed[static_cast<std::size_t>(col)];
    int count = 0;
    for (int k = 0; k < ensemble.replicates.rows; ++k) {
        if (ensemble.replicates.at(k, col) >= observed) {
            ++count;
        }
    }
    return static_cast<double>(count) / ensemble.replicates.rows;
}

} // namespace ftstat
