#include "ftstat/blocklen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftstat/bootstrap.hpp"
#include "ftstat/errors.hpp"

namespace ftstat {

namespace {

// Series with every curve replaced by X_t - mu_hat_t (local mean at
// bandwidth n). All gamma_hat formulas reduce to windowed averages of
// outer products of these centered curves.
Matrix centered_series(const FunctionalSeries& series, int n) {
    const int T = series.length();
    const int G = series.grid_size();
    Matrix mu = local_mean(series, n);
    Matrix c(T, G);
    for (int t = 0; t < T; ++t) {
        const auto x = series.curve(t);
        const double* m = mu.row(t);
        double* out = c.row(t);
        for (int g = 0; g < G; ++g) {
            out[g] = x[static_cast<std::size_t>(g)] - m[g];
        }
    }
    return c;
}

// Prefix rows of pi_t = C_t (x) C_{t+k}, t = 1..T-k, into `prefix`
// (rows 0..T-k used; the buffer may be larger).
void fill_pair_prefix(const Matrix& c, int k, Matrix& prefix) {
    const int T = c.rows;
    const int G = c.cols;
    std::fill(prefix.row(0), prefix.row(0) + G * G, 0.0);
    for (int t = 1; t <= T - k; ++t) {
        const double* x = c.row(t - 1);
        const double* y = c.row(t - 1 + k);
        const double* prev = prefix.row(t - 1);
        double* cur = prefix.row(t);
        for (int g1 = 0; g1 < G; ++g1) {
            const double xs = x[g1];
            const double* prow = prev + static_cast<std::size_t>(g1) * G;
            double* crow = cur + static_cast<std::size_t>(g1) * G;
            for (int g2 = 0; g2 < G; ++g2) {
                crow[g2] = prow[g2] + xs * y[g2];
            }
        }
    }
}

// gamma_hat_{i,k} (1-based i, k >= 0) from the pair prefix sums:
// the window of pair-start indices is [max(i-n,1), min(i+n,T-k)].
void gamma_from_prefix(const Matrix& prefix, int i, int k, int n, int T, double* out, int G) {
    const int lo = std::max(i - n, 1);
    const int hi = std::min(i + n, T - k);
    const double inv = 1.0 / (hi - lo + 1);
    const double* top = prefix.row(hi);
    const double* bot = prefix.row(lo - 1);
    for (int d = 0; d < G * G; ++d) {
        out[d] = inv * (top[d] - bot[d]);
    }
}

double hs_norm(const double* m, int G) {
    double s = 0.0;
    for (int d = 0; d < G * G; ++d) {
        s += m[d] * m[d];
    }
    return std::sqrt(s / (static_cast<double>(G) * G));
}

// |(1/(T-k)) sum_{i=1}^{T-k} gamma_hat_{i,k}|_{2,2}.
double mean_gamma_norm(const Matrix& prefix, int k, int n, int T, int G,
                       std::vector<double>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    std::vector<double> g(static_cast<std::size_t>(G) * G);
    for (int i = 1; i <= T - k; ++i) {
        gamma_from_prefix(prefix, i, k, n, T, g.data(), G);
        for (int d = 0; d < G * G; ++d) {
            scratch[static_cast<std::size_t>(d)] += g[static_cast<std::size_t>(d)];
        }
    }
    const double inv = 1.0 / (T - k);
    for (auto& x : scratch) {
        x *= inv;
    }
    return hs_norm(scratch.data(), G);
}

} // namespace

Matrix local_autocov(const FunctionalSeries& series, int n, int i, int k) {
    const int T = series.length();
    const int G = series.grid_size();
    if (n < 1 || n > T) {
        throw ConfigError("local_autocov: bandwidth n must be in [1, T]");
    }
    if (i < 0 || i >= T) {
        throw ConfigError("local_autocov: index i out of range");
    }
    if (k < 0) {
        Matrix pos = local_autocov(series, n, i, -k);
        Matrix out(G, G);
        for (int g1 = 0; g1 < G; ++g1) {
            for (int g2 = 0; g2 < G; ++g2) {
                out.at(g1, g2) = pos.at(g2, g1);
            }
        }
        return out;
    }
    const int i1 = i + 1;
    const int lo = std::max(i1 - n, 1);
    const int hi = std::min(i1 + n, T - k);
    if (lo > hi) {
        throw DegenerateSeriesError("local_autocov: empty window after clamping at i=" +
                                    std::to_string(i) + ", k=" + std::to_string(k));
    }
    Matrix c = centered_series(series, n);
    Matrix out(G, G);
    for (int t = lo; t <= hi; ++t) {
        const double* x = c.row(t - 1);
        const double* y = c.row(t - 1 + k);
        for (int g1 = 0; g1 < G; ++g1) {
            double* row = out.row(g1);
            const double xs = x[g1];
            for (int g2 = 0; g2 < G; ++g2) {
                row[g2] += xs * y[g2];
            }
        }
    }
    const double inv = 1.0 / (hi - lo + 1);
    for (auto& x : out.v) {
        x *= inv;
    }
    return out;
}

LagCutoff select_L(const FunctionalSeries& series, int n) {
    const int T = series.length();
    const int G = series.grid_size();
    if (T < 8) {
        throw ConfigError("select_L needs T >= 8");
    }
    if (n < 1 || n > T) {
        throw ConfigError("select_L: bandwidth n must be in [1, T]");
    }
    const int K_T = std::max(5, static_cast<int>(std::ceil(std::sqrt(std::log(T)))));
    const double threshold = 2.0 * std::sqrt(std::log(T) / T);
    const int L_max = T / 4;

    Matrix c = centered_series(series, n);
    Matrix prefix(T + 1, G * G);
    std::vector<double> scratch(static_cast<std::size_t>(G) * G);

    fill_pair_prefix(c, 0, prefix);
    const double denom = mean_gamma_norm(prefix, 0, n, T, G, scratch);

    // Degenerate when the centered lag-0 moment vanishes relative to the
    // raw second moment (constant or all-zero series).
    {
        Matrix raw(T, G);
        for (int t = 0; t < T; ++t) {
            std::copy(series.curve(t).begin(), series.curve(t).end(), raw.row(t));
        }
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (int t = 0; t < T; ++t) {
            const double* x = raw.row(t);
            for (int g1 = 0; g1 < G; ++g1) {
                const double xs = x[g1];
                for (int g2 = 0; g2 < G; ++g2) {
                    scratch[static_cast<std::size_t>(g1) * G + g2] += xs * x[g2];
                }
            }
        }
        for (auto& x : scratch) {
            x /= T;
        }
        const double raw_norm = hs_norm(scratch.data(), G);
        if (raw_norm == 0.0 || denom <= 1e-12 * raw_norm) {
            throw DegenerateSeriesError(
                "degenerate series: centered lag-0 autocovariance is numerically zero");
        }
    }

    LagCutoff out;
    out.rho.push_back(1.0);
    auto rho_at = [&](int k) -> double {
        while (static_cast<int>(out.rho.size()) <= k) {
            const int kk = static_cast<int>(out.rho.size());
            fill_pair_prefix(c, kk, prefix);
            out.rho.push_back(mean_gamma_norm(prefix, kk, n, T, G, scratch) / denom);
        }
        return out.rho[static_cast<std::size_t>(k)];
    };

    for (int L = 1; L <= L_max; ++L) {
        bool ok = true;
        for (int k = 1; k <= K_T && L + k <= T - 1; ++k) {
            if (rho_at(L + k) > threshold) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.L = L;
            // The trace records rho up to L + K_T.
            rho_at(std::min(L + K_T, T - 1));
            out.rho.resize(static_cast<std::size_t>(std::min(L + K_T, T - 1)) + 1);
            return out;
        }
    }
    out.L = L_max;
    out.capped = true;
    out.rho.resize(static_cast<std::size_t>(std::min(L_max + K_T, T - 1)) + 1);
    return out;
}

BlockLengthTrace select_block_length(const FunctionalSeries& series, int n) {
    const int T = series.length();
    const int G = series.grid_size();
    LagCutoff cutoff = select_L(series, n);
    const int L = cutoff.L;
    if (T <= 2 * L + 2) {
        throw ConfigError("select_block_length needs T > 2L + 2, got T=" + std::to_string(T) +
                          ", L=" + std::to_string(L));
    }

    BlockLengthTrace trace;
    trace.L = L;
    trace.rho = std::move(cutoff.rho);
    trace.L_capped = cutoff.capped;

    Matrix c = centered_series(series, n);
    Matrix prefix(T + 1, G * G);
    const int i_lo = L + 1;
    const int i_hi = T - L;
    const int n_interior = i_hi - i_lo + 1;

    // V_i = sum_{k=-L}^{L} gamma_hat_{i,k} accumulated k by k (negative lags
    // enter as transposes); D = sum_i sum_k |k| gamma_hat_{i,k}.
    Matrix v(n_interior, G * G);
    std::vector<double> d_sum(static_cast<std::size_t>(G) * G, 0.0);
    std::vector<double> g(static_cast<std::size_t>(G) * G);
    for (int k = 0; k <= L; ++k) {
        fill_pair_prefix(c, k, prefix);
        for (int idx = 0; idx < n_interior; ++idx) {
            const int i = i_lo + idx;
            gamma_from_prefix(prefix, i, k, n, T, g.data(), G);
            double* vi = v.row(idx);
            if (k == 0) {
                for (int d = 0; d < G * G; ++d) {
                    vi[d] += g[static_cast<std::size_t>(d)];
                }
            } else {
                for (int g1 = 0; g1 < G; ++g1) {
                    for (int g2 = 0; g2 < G; ++g2) {
                        const double val = g[static_cast<std::size_t>(g1) * G + g2];
                        vi[static_cast<std::size_t>(g1) * G + g2] += val;
                        vi[static_cast<std::size_t>(g2) * G + g1] += val;
                        d_sum[static_cast<std::size_t>(g1) * G + g2] += k * val;
                        d_sum[static_cast<std::size_t>(g2) * G + g1] += k * val;
                    }
                }
            }
        }
    }

    const double inv_count = 1.0 / n_interior;
    double delta = 0.0;
    for (int d = 0; d < G * G; ++d) {
        const double x = d_sum[static_cast<std::size_t>(d)] * inv_count;
        delta += x * x;
    }
    delta /= static_cast<double>(G) * G;
    trace.delta_hat = delta;

    double gamma = 0.0;
    for (int idx = 0; idx < n_interior; ++idx) {
        const double* vi = v.row(idx);
        double tr = 0.0;
        for (int gd = 0; gd < G; ++gd) {
            tr += vi[static_cast<std::size_t>(gd) * G + gd];
        }
        tr /= G;
        double hs = 0.0;
        for (int d = 0; d < G * G; ++d) {
            hs += vi[d] * vi[d];
        }
        hs /= static_cast<double>(G) * G;
        gamma += tr * tr + hs;
    }
    gamma *= (2.0 / 3.0) * inv_count;
    trace.gamma_hat = gamma;

    const int m_cap = std::max(2, T / 4);
    if (gamma <= 0.0) {
        trace.gamma_degenerate = true;
        trace.m_hat_raw = 0.0;
        trace.m = 2;
        return trace;
    }
    trace.m_hat_raw = std::cbrt(2.0 * delta * T / gamma);
    const long long rounded = std::llround(trace.m_hat_raw);
    trace.m = static_cast<int>(std::clamp<long long>(rounded, 2, m_cap));
    return trace;
}

} // namespace ftstat
