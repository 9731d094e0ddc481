#pragma once

#include <vector>

#include "ftstat/grid.hpp"
#include "ftstat/matrix.hpp"

namespace ftstat {

// Everything the block-length selection saw and decided.
struct BlockLengthTrace {
    int L = 0;
    std::vector<double> rho;   // rho_hat_k for k = 0..L+K_T (rho[0] == 1)
    double delta_hat = 0.0;
    double gamma_hat = 0.0;
    double m_hat_raw = 0.0;
    int m = 2;                 // clamped to [2, T/4]
    bool L_capped = false;     // no cutoff satisfied the rule; L = T/4 used
    bool gamma_degenerate = false; // gamma_hat == 0, fell back to m = 2
};

// Doubly centered local autocovariance gamma_hat_{i,k} as a G x G matrix.
// `i` is the 0-based time index (paper-style index i+1); both factors are
// centered by their own clamped local means at bandwidth n. Negative k
// returns the transpose of gamma_hat_{i,|k|}.
Matrix local_autocov(const FunctionalSeries& series, int n, int i, int k);

struct LagCutoff {
    int L = 0;
    std::vector<double> rho;
    bool capped = false;
};

// Smallest L >= 1 such that rho_hat_{L+k} <= 2 sqrt(log(T)/T) for all
// k = 1..K_T, K_T = max(5, ceil(sqrt(log T))), natural logs; capped at T/4.
LagCutoff select_L(const FunctionalSeries& series, int n);

// Plug-in MSE-optimal block length m = round((2 delta_hat T / gamma_hat)^(1/3)),
// clamped to [2, T/4], with the full selection trace.
BlockLengthTrace select_block_length(const FunctionalSeries& series, int n);

} // namespace ftstat
