#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ftstat/grid.hpp"
#include "ftstat/matrix.hpp"

namespace ftstat {

// The ten benchmark data-generating processes: M0 stationary; Mm* add a
// time-varying mean level; Mv* scale the innovations over time; Ma* scale
// the autoregression operator over time.
enum class ModelId { M0, Mm1, Mm2, Mm3, Mv1, Mv2, Mv3, Ma1, Ma2, Ma3 };

std::optional<ModelId> parse_model_id(std::string_view token);
std::string to_string(ModelId id);
std::span<const ModelId> all_model_ids();

// Fourier basis of L2([0,1]): psi_0 = 1, psi_{2n-1} = sqrt(2) sin(2 pi n t),
// psi_{2n} = sqrt(2) cos(2 pi n t). Indices 0..16.
double fourier_basis_eval(int i, double tau);

// The four time profiles a_0..a_3 used for means, noise scales and damping,
// extended constantly outside [0,1].
double damping_fn(int j, double u);

// Random autoregression operator in Fourier coordinates: entries of G drawn
// independently N(0, exp(-i-j)), then rescaled so the Frobenius norm is
// exactly 1/3.
struct OperatorCoeffs {
    Matrix g; // dim x dim
    double frobenius_norm() const;
};

OperatorCoeffs draw_operator(int dim, std::uint64_t seed);

// Declarative model description. The callables take rescaled time u = t/T
// (which can fall outside [0,1] during burn-in; the built-in profiles clamp
// it through damping_fn).
struct TvrFarModel {
    ModelId id = ModelId::M0;
    std::function<double(double)> mean_level;   // additive level mu(t/T)
    std::function<double(double)> damping;      // a(t/T)
    std::function<double(double)> noise_scale;  // sigma(t/T)
    int dim = 17;
    std::function<double(int)> innovation_sd;   // sqrt(Var u_{t,i}) = exp(-i/20)

    static TvrFarModel from_id(ModelId id);
};

// Coefficient recursion y_t = a(t/T) G^T y_{t-1} + sigma(t/T) e_t run from
// t = -burnin+1 with start state y_{-burnin} (zero when omitted); returns
// the T x dim matrix of y_1..y_T. Exposed separately so tests can couple
// two runs with different start states.
Matrix evolve_coefficients(const TvrFarModel& model, const OperatorCoeffs& op, int T, int burnin,
                           std::uint64_t innovation_seed, std::span<const double> start_state = {});

// Render coefficient rows to curves on a G-point midpoint grid and add the
// mean level.
FunctionalSeries render_series(const TvrFarModel& model, const Matrix& coeffs, int G);

// One full draw: operator from substream (seed, 1), innovations from
// substream (seed, 2).
FunctionalSeries simulate(const TvrFarModel& model, int T, int G, int burnin, std::uint64_t seed);

} // namespace ftstat
