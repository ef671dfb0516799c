#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace denguecast::gam {

/// Natural cubic regression spline in the cardinal (knot-value)
/// parameterization: basis function j is the natural cubic spline that is 1 at
/// knot j and 0 at every other knot, so a coefficient vector holds the
/// function's values at the knots. Evaluation beyond the boundary knots
/// continues the boundary tangent line, the natural-spline extrapolation.
///
/// The roughness penalty S satisfies  beta' S beta = integral of f''(x)^2 dx
/// for f the spline with knot values beta. It is assembled in closed form from
/// the knot spacing: with D the second-difference map and B the Gram matrix of
/// the piecewise-linear second derivative, S = D' B^{-1} D. Constant and
/// linear functions are annihilated exactly.
class CubicSplineBasis {
public:
    /// Builds a basis from explicit strictly increasing knots.
    explicit CubicSplineBasis(Eigen::VectorXd knots);

    struct FromData;

    /// Knots at k evenly spaced quantiles of x (exact order statistics, min
    /// and max included). Fewer than k distinct values reduce the dimension;
    /// fewer than 4 distinct values throw InsufficientDataError.
    static FromData from_quantiles(std::span<const double> x, int k);

    int size() const { return static_cast<int>(knots_.size()); }
    const Eigen::VectorXd& knots() const { return knots_; }
    double min_knot() const { return knots_(0); }
    double max_knot() const { return knots_(knots_.size() - 1); }
    bool in_range(double x) const { return x >= min_knot() && x <= max_knot(); }

    /// Basis functions evaluated at x (length k row).
    Eigen::RowVectorXd row(double x) const;

    /// Rows stacked for a whole column of data.
    Eigen::MatrixXd matrix(std::span<const double> xs) const;

    /// The k x k roughness penalty (symmetric positive semidefinite).
    const Eigen::MatrixXd& penalty() const { return penalty_; }

private:
    Eigen::VectorXd knots_;
    Eigen::MatrixXd d2_map_;  // knot values -> second derivatives at knots (natural: rows 0, k-1 zero)
    Eigen::MatrixXd penalty_; // D' B^{-1} D
};

/// Result of quantile-based construction: the basis plus the dimension
/// actually used (smaller than requested when x has too few distinct values).
struct CubicSplineBasis::FromData {
    CubicSplineBasis basis;
    int requested_k;
    int used_k;
    bool reduced() const { return used_k < requested_k; }
};

} // namespace denguecast::gam
