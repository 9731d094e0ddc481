#include "ftstat/combine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ftstat/errors.hpp"

namespace ftstat {

WeightProfile WeightProfile::for_max_lag(int H) {
    if (H < 0) {
        throw ConfigError("WeightProfile: H must be >= 0");
    }
    WeightProfile wp;
    wp.H = H;
    wp.w.resize(static_cast<std::size_t>(H) + 2);
    if (H == 0) {
        wp.w[0] = 0.5;
        wp.w[1] = 0.5;
    } else {
        wp.w[0] = 1.0 / 3.0;
        wp.w[1] = 1.0 / 3.0;
        for (int h = 1; h <= H; ++h) {
            wp.w[static_cast<std::size_t>(h) + 1] = 1.0 / (3.0 * H);
        }
    }
    return wp;
}

double inv_norm_cdf(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw ConfigError("inv_norm_cdf: p must lie strictly inside (0, 1), got " +
                          std::to_string(p));
    }
    // AS 241 (Wichura), the long rational approximations.
    const double q = p - 0.5;
    double x;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        x = q *
            (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                  6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
              1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
    } else {
        double r = q < 0.0 ? p : 1.0 - p;
        r = std::sqrt(-std::log(r));
        if (r <= 5.0) {
            r -= 1.6;
            x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
        } else {
            r -= 5.0;
            x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
        }
        if (q < 0.0) {
            x = -x;
        }
    }
    // One Newton step against the erfc-based CDF.
    const double cdf = 0.5 * std::erfc(-x * std::numbers::inv_sqrt2);
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf > 0.0) {
        x -= (cdf - p) / pdf;
    }
    return x;
}

Matrix midrank_pvalues(const BootstrapEnsemble& ensemble) {
    const int K = ensemble.config.K;
    const int cols = ensemble.replicates.cols;
    Matrix p(K + 1, cols);
    const auto value = [&](int i, int c) {
        return i == 0 ? ensemble.observed[static_cast<std::size_t>(c)]
                      : ensemble.replicates.at(i - 1, c);
    };
    for (int c = 0; c < cols; ++c) {
        for (int i = 0; i <= K; ++i) {
            const double si = value(i, c);
            int count = 0;
            for (int k = 1; k <= K; ++k) {
                if (value(k, c) >= si) {
                    ++count;
                }
            }
            p.at(i, c) = (0.5 + count) / (K + 1);
        }
    }
    return p;
}

double psi_combine(std::span<const double> p, const WeightProfile& weights) {
    if (p.size() != weights.w.size()) {
        throw DimensionError("psi_combine: p-value vector does not match weight profile");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += weights.w[i] * inv_norm_cdf(1.0 - p[i]);
    }
    return s;
}

TestReport combined_test(const BootstrapEnsemble& ensemble) {
    const int K = ensemble.config.K;
    const int H = ensemble.config.H;
    const Matrix p = midrank_pvalues(ensemble);

    TestReport report;
    report.per_hypothesis_p.assign(p.row(0), p.row(0) + p.cols);
    report.individual_p.resize(static_cast<std::size_t>(p.cols));
    for (int h = -1; h <= H; ++h) {
        report.individual_p[static_cast<std::size_t>(h) + 1] = individual_pvalue(ensemble, h);
    }

    // Phi^{-1}(1 - p) for every cell; the psi for any max lag H' is then a
    // weighted row sum over the first H'+2 columns.
    Matrix z(p.rows, p.cols);
    for (int i = 0; i < p.rows; ++i) {
        for (int c = 0; c < p.cols; ++c) {
            z.at(i, c) = inv_norm_cdf(1.0 - p.at(i, c));
        }
    }
    report.combined_p_by_lag.resize(static_cast<std::size_t>(H) + 1);
    for (int hp = 0; hp <= H; ++hp) {
        const WeightProfile wp = WeightProfile::for_max_lag(hp);
        std::vector<double> w_rows(static_cast<std::size_t>(K) + 1, 0.0);
        for (int i = 0; i <= K; ++i) {
            double s = 0.0;
            for (int c = 0; c < hp + 2; ++c) {
                s += wp.w[static_cast<std::size_t>(c)] * z.at(i, c);
            }
            w_rows[static_cast<std::size_t>(i)] = s;
        }
        int count = 0;
        for (int k = 1; k <= K; ++k) {
            if (w_rows[static_cast<std::size_t>(k)] >= w_rows[0]) {
                ++count;
            }
        }
        report.combined_p_by_lag[static_cast<std::size_t>(hp)] =
            static_cast<double>(count) / K;
        if (hp == H) {
            report.combined_W = w_rows[0];
            report.global_p = report.combined_p_by_lag[static_cast<std::size_t>(hp)];
        }
    }

    report.tuning.T = ensemble.T;
    report.tuning.G = ensemble.G;
    report.tuning.H = H;
    report.tuning.K = K;
    report.tuning.m = ensemble.config.m;
    report.tuning.n = ensemble.config.n;
    report.tuning.seed = ensemble.config.seed;
    return report;
}

} // namespace ftstat
