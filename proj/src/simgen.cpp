#include "ftstat/simgen.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ftstat/errors.hpp"
#include "ftstat/rng.hpp"

namespace ftstat {

namespace {

constexpr std::array<ModelId, 10> kAllModels = {
    ModelId::M0,  ModelId::Mm1, ModelId::Mm2, ModelId::Mm3, ModelId::Mv1,
    ModelId::Mv2, ModelId::Mv3, ModelId::Ma1, ModelId::Ma2, ModelId::Ma3};

constexpr std::array<const char*, 10> kModelNames = {"M0",  "Mm1", "Mm2", "Mm3", "Mv1",
                                                     "Mv2", "Mv3", "Ma1", "Ma2", "Ma3"};

double clamp_unit(double u) {
    return u < 0.0 ? 0.0 : (u > 1.0 ? 1.0 : u);
}

} // namespace

std::optional<ModelId> parse_model_id(std::string_view token) {
    for (std::size_t i = 0; i < kModelNames.size(); ++i) {
        if (token == kModelNames[i]) {
            return kAllModels[i];
        }
    }
    return std::nullopt;
}

std::string to_string(ModelId id) {
    return kModelNames[static_cast<std::size_t>(id)];
}

std::span<const ModelId> all_model_ids() {
    return kAllModels;
}

double fourier_basis_eval(int i, double tau) {
    if (i < 0 || i > 16) {
        throw ConfigError("fourier_basis_eval: index must be in [0, 16]");
    }
    if (i == 0) {
        return 1.0;
    }
    const int n = (i + 1) / 2;
    const double arg = 2.0 * std::numbers::pi * n * tau;
    const double sqrt2 = std::numbers::sqrt2;
    return (i % 2 == 1) ? sqrt2 * std::sin(arg) : sqrt2 * std::cos(arg);
}

double damping_fn(int j, double u) {
    u = clamp_unit(u);
    switch (j) {
        case 0: return 1.0;
        case 1: return 0.5 + u;
        case 2: return 1.0 - 0.5 * std::cos(2.0 * std::numbers::pi * u);
        case 3: return 0.5 + (u >= 0.5 ? 1.0 : 0.0);
        default: throw ConfigError("damping_fn: profile index must be in [0, 3]");
    }
}

double OperatorCoeffs::frobenius_norm() const {
    double s = 0.0;
    for (double x : g.v) {
        s += x * x;
    }
    return std::sqrt(s);
}

OperatorCoeffs draw_operator(int dim, std::uint64_t seed) {
    if (dim < 1) {
        throw ConfigError("draw_operator: dim must be >= 1");
    }
    NormalSampler normals(seed);
    OperatorCoeffs op;
    op.g = Matrix(dim, dim);
    double sum_sq = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double sd = std::exp(-0.5 * (i + j));
            const double x = sd * normals.next();
            op.g.at(i, j) = x;
            sum_sq += x * x;
        }
    }
    const double scale = 1.0 / (3.0 * std::sqrt(sum_sq));
    for (auto& x : op.g.v) {
        x *= scale;
    }
    return op;
}

TvrFarModel TvrFarModel::from_id(ModelId id) {
    TvrFarModel model;
    model.id = id;
    model.mean_level = [](double) { return 0.0; };
    model.damping = [](double) { return 1.0; };
    model.noise_scale = [](double) { return 1.0; };
    model.innovation_sd = [](int i) { return std::exp(-i / 20.0); };
    switch (id) {
        case ModelId::M0:
            break;
        case ModelId::Mm1: model.mean_level = [](double u) { return damping_fn(1, u); }; break;
        case ModelId::Mm2: model.mean_level = [](double u) { return damping_fn(2, u); }; break;
        case ModelId::Mm3: model.mean_level = [](double u) { return damping_fn(3, u); }; break;
        case ModelId::Mv1: model.noise_scale = [](double u) { return damping_fn(1, u); }; break;
        case ModelId::Mv2: model.noise_scale = [](double u) { return damping_fn(2, u); }; break;
        case ModelId::Mv3: model.noise_scale = [](double u) { return damping_fn(3, u); }; break;
        case ModelId::Ma1: model.damping = [](double u) { return damping_fn(1, u); }; break;
        case ModelId::Ma2: model.damping = [](double u) { return damping_fn(2, u); }; break;
        case ModelId::Ma3: model.damping = [](double u) { return damping_fn(3, u); }; break;
    }
    return model;
}

Matrix evolve_coefficients(const TvrFarModel& model, const OperatorCoeffs& op, int T, int burnin,
                           std::uint64_t innovation_seed, std::span<const double> start_state) {
    if (T < 2 || burnin < 0) {
        throw ConfigError("evolve_coefficients: need T >= 2 and burnin >= 0");
    }
    const int dim = model.dim;
    if (op.g.rows != dim || op.g.cols != dim) {
        throw DimensionError("evolve_coefficients: operator dimension mismatch");
    }
    if (!start_state.empty() && start_state.size() != static_cast<std::size_t>(dim)) {
        throw DimensionError("evolve_coefficients: start state dimension mismatch");
    }

    std::vector<double> sd(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        sd[static_cast<std::size_t>(i)] = model.innovation_sd(i);
    }

    NormalSampler normals(innovation_seed);
    std::vector<double> y(static_cast<std::size_t>(dim), 0.0);
    if (!start_state.empty()) {
        std::copy(start_state.begin(), start_state.end(), y.begin());
    }
    std::vector<double> applied(static_cast<std::size_t>(dim));
    Matrix out(T, dim);
    for (int t = -burnin + 1; t <= T; ++t) {
        const double u = static_cast<double>(t) / T;
        const double a = model.damping(u);
        const double sigma = model.noise_scale(u);
        // Operator action in coefficient space: out_j = sum_i G_{i,j} y_i.
        for (int j = 0; j < dim; ++j) {
            applied[static_cast<std::size_t>(j)] = 0.0;
        }
        for (int i = 0; i < dim; ++i) {
            const double yi = y[static_cast<std::size_t>(i)];
            const double* grow = op.g.row(i);
            for (int j = 0; j < dim; ++j) {
                applied[static_cast<std::size_t>(j)] += grow[j] * yi;
            }
        }
        for (int j = 0; j < dim; ++j) {
            y[static_cast<std::size_t>(j)] =
                a * applied[static_cast<std::size_t>(j)] +
                sigma * sd[static_cast<std::size_t>(j)] * normals.next();
        }
        if (t >= 1) {
            std::copy(y.begin(), y.end(), out.row(t - 1));
        }
    }
    return out;
}

FunctionalSeries render_series(const TvrFarModel& model, const Matrix& coeffs, int G) {
    const int T = coeffs.rows;
    const int dim = coeffs.cols;
    Grid grid(G);
    Matrix basis(dim, G);
    for (int i = 0; i < dim; ++i) {
        for (int g = 0; g < G; ++g) {
            basis.at(i, g) = fourier_basis_eval(i, grid.point(g));
        }
    }
    std::vector<double> data(static_cast<std::size_t>(T) * G, 0.0);
    for (int t = 0; t < T; ++t) {
        double* row = data.data() + static_cast<std::size_t>(t) * G;
        const double* y = coeffs.row(t);
        for (int i = 0; i < dim; ++i) {
            const double yi = y[i];
            const double* brow = basis.row(i);
            for (int g = 0; g < G; ++g) {
                row[g] += yi * brow[g];
            }
        }
        const double level = model.mean_level(static_cast<double>(t + 1) / T);
        for (int g = 0; g < G; ++g) {
            row[g] += level;
        }
    }
    return FunctionalSeries(std::move(grid), std::move(data));
}

FunctionalSeries simulate(const TvrFarModel& model, int T, int G, int burnin,
                          std::uint64_t seed) {
    const OperatorCoeffs op = draw_operator(model.dim, substream_seed(seed, 1));
    const Matrix coeffs = evolve_coefficients(model, op, T, burnin, substream_seed(seed, 2));
    return render_series(model, coeffs, G);
}

} // namespace ftstat
