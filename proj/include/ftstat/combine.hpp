#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftstat/blocklen.hpp"
#include "ftstat/bootstrap.hpp"
#include "ftstat/matrix.hpp"

namespace ftstat {

// Weights for the inverse-normal combination; entry 0 weights the mean
// hypothesis, entry h+1 the lag-h hypothesis. For H = 0 both weights are
// 1/2; for H >= 1 the mean and lag-0 weights are 1/3 and every further lag
// gets 1/(3H). Weights sum to 1.
struct WeightProfile {
    int H = 0;
    std::vector<double> w;

    static WeightProfile for_max_lag(int H);
};

// Standard normal quantile: AS 241 rational approximation refined by one
// Newton step against the erfc-based CDF. Absolute error well below 1e-8
// on [1e-10, 1 - 1e-10]. Throws ConfigError outside (0, 1).
double inv_norm_cdf(double p);

// Mid-rank p-values p(S^(i)) = (1/2 + #{k >= 1 : S^(k) >= S^(i)}) / (K+1)
// for all rows i = 0..K (row 0 = observed) and all H+2 hypotheses; ties
// count as exceedances. Values lie strictly inside (0, 1).
Matrix midrank_pvalues(const BootstrapEnsemble& ensemble);

// psi(p) = sum_i w_i * InvPhi(1 - p_i); strictly decreasing in every p_i.
double psi_combine(std::span<const double> p, const WeightProfile& weights);

struct TestTuning {
    int T = 0, G = 0, H = 0, K = 0, m = 0, n = 0, L = 0;
    std::uint64_t seed = 0;
};

struct TestReport {
    std::vector<double> per_hypothesis_p;  // H+2 mid-rank p-values (row 0)
    std::vector<double> individual_p;      // H+2 plain (1/K)-count p-values
    double combined_W = 0.0;               // psi of the observed row at max lag H
    double global_p = 0.0;                 // bootstrap p-value of combined_W
    std::vector<double> combined_p_by_lag; // global p for max lag 0..H
    TestTuning tuning;
    BlockLengthTrace selection;            // filled when m was chosen by the selector
    bool m_auto = false;
};

// Algorithm: mid-rank p-values for every row, psi per row, global p-value
// as the fraction of replicate psi values >= the observed one. Also fills
// the individual p-values and the global p for every max lag up to H.
TestReport combined_test(const BootstrapEnsemble& ensemble);

} // namespace ftstat
