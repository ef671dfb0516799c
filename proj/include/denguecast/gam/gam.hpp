#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "denguecast/gam/basis.hpp"
#include "denguecast/lags/design.hpp"

namespace denguecast::gam {

/// One fitted smooth: f_j(x) = basis.row(x) * coefs. The coefficients live in
/// the cardinal basis and already satisfy the sum-to-zero constraint over the
/// training rows, absorbed during fitting.
struct SmoothTerm {
    std::string name;
    CubicSplineBasis basis;
    Eigen::VectorXd coefs;
    double lambda = 1.0;        // searched smoothing parameter (dimensionless)
    double penalty_scale = 1.0; // effective penalty = lambda * penalty_scale * S
    double edf = 0.0;
};

struct GamFitOptions {
    int basis_dim = 10;
    double log10_lambda_min = -8.0;
    double log10_lambda_max = 8.0;
    int max_cycles = 30;
    double rel_tol = 1e-7;
    /// Bypass the GCV search with fixed smoothing parameters (one per column).
    std::optional<std::vector<double>> fixed_lambdas;
};

/// Additive Gaussian model: y = intercept + sum_j f_j(x_j) + eps.
struct GamModel {
    double intercept = 0.0;
    std::vector<SmoothTerm> terms;
    double sigma2 = 0.0;
    double gcv = 0.0;
    double edf_total = 0.0;
    double edf_by_leverage = 0.0; // same trace computed from leverages, a numerical cross-check
    Eigen::Index n_train = 0;
    bool converged = true;
    std::vector<std::string> warnings;
    Eigen::VectorXd fitted; // training fitted values (in-memory only)
};

/// Penalized least squares with per-term sum-to-zero centering and smoothing
/// parameters chosen to minimize GCV = n RSS / (n - edf)^2 by coordinate-wise
/// golden-section search on log10(lambda) in [log10_lambda_min,
/// log10_lambda_max]. Cycles stop once the relative GCV improvement drops
/// below rel_tol (or after max_cycles, flagged as non-converged).
GamModel fit_gam(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const std::vector<std::string>& names, const GamFitOptions& options = {});

GamModel fit_gam(const lags::DesignMatrix& design, const GamFitOptions& options = {});

/// intercept + sum of smooths per row. `extrapolated`, when given, is filled
/// with one flag per row marking covariates outside the training range.
Eigen::VectorXd predict_gam(const GamModel& model, const Eigen::MatrixXd& rows,
                            std::vector<std::uint8_t>* extrapolated = nullptr);

/// The GCV criterion itself. Throws UndefinedResultError when edf >= n.
double gcv_score(double n, double rss, double edf);

/// Versioned plain-text serialization; numbers round-trip exactly.
std::string serialize_gam(const GamModel& model);
GamModel deserialize_gam(const std::string& text);

} // namespace denguecast::gam
