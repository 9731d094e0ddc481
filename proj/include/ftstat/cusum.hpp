#pragma once

#include <vector>

#include "ftstat/grid.hpp"
#include "ftstat/matrix.hpp"

namespace ftstat {

enum class CusumKind { Mean, Lag };

// Partial-sum decomposition of a CUSUM process.
//
// Row j of `partials` is A_j = T^{-1/2} sum_{t=1}^{min(j, T_eff)} term_t,
// where term_t is the curve X_t (dim = G, kind Mean) or the flattened outer
// product X_t (x) X_{t+h} (dim = G^2, kind Lag), and T_eff = T for the mean,
// T - h at lag h. The process at u in [0,1] is
//   U(u, .) = A_{min(floor(uT), T_eff)} - u * A_{T_eff},
// so A_0 = 0, rows j >= T_eff repeat A_{T_eff}, and U(1, .) == 0 exactly.
struct CusumDecomposition {
    CusumKind kind = CusumKind::Mean;
    int h = 0;
    int T = 0;
    int dim = 0;
    double cell_weight = 0.0; // quadrature weight of one tau-cell: 1/G or 1/G^2
    Matrix partials;          // (T+1) x dim

    int effective_length() const { return kind == CusumKind::Mean ? T : T - h; }
    const double* total() const { return partials.row(T); }
};

CusumDecomposition cusum_mean(const FunctionalSeries& series);

// Lag decompositions hold T+1 rows of G^2 entries; series with
// G^2 * T > 1e8 entries are refused (ConfigError) to keep memory bounded.
CusumDecomposition cusum_lag(const FunctionalSeries& series, int h);

// Exact L2 norm of the CUSUM process over (u, tau...): on each u-interval
// [j/T, (j+1)/T) the integrand (A_j - u B)^2 is quadratic in u and is
// integrated in closed form,
//   |A_j|^2 (b - a) - <A_j, B> (b^2 - a^2) + |B|^2 (b^3 - a^3) / 3,
// then averaged over tau-cells with the grid quadrature.
double stat_l2(const CusumDecomposition& c);

// Midpoint Riemann approximation of the same norm on `subdiv` u-cells
// (subdiv >= T); the discretized oracle for stat_l2.
double stat_l2_riemann(const CusumDecomposition& c, int subdiv);

// Plug-in measures of non-stationarity:
// (|U_T|, |U_{T,0}|, ..., |U_{T,H}|) / sqrt(T).
std::vector<double> nonstat_measures(const FunctionalSeries& series, int H);

} // namespace ftstat
