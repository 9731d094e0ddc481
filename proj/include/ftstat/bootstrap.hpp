#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ftstat/grid.hpp"
#include "ftstat/matrix.hpp"

namespace ftstat {

struct BootstrapConfig {
    int m = 0;            // block length, 1..T
    int n = 0;            // local-mean bandwidth, 1..T
    int H = 0;            // maximum lag, 0..T-2
    int K = 0;            // number of replicates, >= 1
    std::uint64_t seed = 0;
};

void validate_config(const BootstrapConfig& cfg, int T);

// Observed statistic vector and K joint bootstrap replicates. Column 0 is
// the mean statistic, column h+1 the lag-h statistic; all H+2 entries of
// replicate row k are driven by the same multiplier stream.
struct BootstrapEnsemble {
    std::vector<double> observed; // H+2
    Matrix replicates;            // K x (H+2)
    BootstrapConfig config;
    int T = 0;
    int G = 0;
};

// Local mean estimates; row t (0-based) is the average of X over the window
// t+1+j, j in [max(-n, -t), min(n, T-t-1)] in 0-based terms -- the clamped
// two-sided window of half-width n around t.
Matrix local_mean(const FunctionalSeries& series, int n);

// Local lag-h cross-moment estimates, rows t = 0..T-h-1 of flattened G x G
// products averaged over the window with upper clamp min(n, T-h-1-t).
Matrix local_cross_mean(const FunctionalSeries& series, int n, int h);

// Multipliers for replicate k: standard normals drawn by the polar method
// from substream (seed, k); `count` values in stream order.
std::vector<double> normal_multipliers(std::uint64_t seed, int k, int count);

// Test hook: replaces the normal multipliers. Must return at least T values
// for every k in 1..K. Off by default (the seed-derived stream is used).
using MultiplierSource = std::function<std::vector<double>(int k)>;

BootstrapEnsemble bootstrap_ensemble(const FunctionalSeries& series, const BootstrapConfig& cfg,
                                     int jobs = 1);
BootstrapEnsemble bootstrap_ensemble(const FunctionalSeries& series, const BootstrapConfig& cfg,
                                     const MultiplierSource& multipliers, int jobs = 1);

// Fraction of replicates with statistic >= the observed one; ties count as
// exceedances. h_index runs from -1 (mean) to H.
double individual_pvalue(const BootstrapEnsemble& ensemble, int h_index);

} // namespace ftstat
