#include "denguecast/gam/basis.hpp"

#include <algorithm>
#include <cmath>

#include "denguecast/error.hpp"

namespace denguecast::gam {

CubicSplineBasis::CubicSplineBasis(Eigen::VectorXd knots) : knots_(std::move(knots)) {
    const auto k = knots_.size();
    if (k < 4) throw InsufficientDataError("spline basis needs at least 4 knots");
    for (Eigen::Index i = 1; i < k; ++i)
        if (!(knots_(i) > knots_(i - 1)))
            throw ValidationError("spline knots must be strictly increasing");

    Eigen::VectorXd h(k - 1);
    for (Eigen::Index i = 0; i + 1 < k; ++i) h(i) = knots_(i + 1) - knots_(i);

    // Second-difference map D ((k-2) x k) and the tridiagonal Gram matrix B.
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k - 2, k);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(k - 2, k - 2);
    for (Eigen::Index i = 0; i < k - 2; ++i) {
        d(i, i) = 1.0 / h(i);
        d(i, i + 1) = -1.0 / h(i) - 1.0 / h(i + 1);
        d(i, i + 2) = 1.0 / h(i + 1);
        b(i, i) = (h(i) + h(i + 1)) / 3.0;
        if (i + 1 < k - 2) {
            b(i, i + 1) = h(i + 1) / 6.0;
            b(i + 1, i) = h(i + 1) / 6.0;
        }
    }

    const Eigen::MatrixXd interior = b.ldlt().solve(d); // B^{-1} D
    d2_map_ = Eigen::MatrixXd::Zero(k, k);
    d2_map_.middleRows(1, k - 2) = interior;

    penalty_ = d.transpose() * interior;
    penalty_ = ((penalty_ + penalty_.transpose()) / 2.0).eval();
}

CubicSplineBasis::FromData CubicSplineBasis::from_quantiles(std::span<const double> x, int k) {
    if (k < 4) throw ValidationError("basis dimension must be at least 4");
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct(sorted);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4)
        throw InsufficientDataError("spline basis needs at least 4 distinct values, got " +
                                    std::to_string(distinct.size()));

    const int used = std::min<int>(k, static_cast<int>(distinct.size()));
    const auto pick = [used](const std::vector<double>& v) {
        std::vector<double> knots;
        knots.reserve(static_cast<std::size_t>(used));
        const double step = static_cast<double>(v.size() - 1) / (used - 1);
        for (int j = 0; j < used; ++j)
            knots.push_back(v[static_cast<std::size_t>(std::llround(j * step))]);
        return knots;
    };

    std::vector<double> knots = pick(sorted);
    if (std::adjacent_find(knots.begin(), knots.end()) != knots.end()) {
        // Heavily tied data: quantiles of the raw sample collide, fall back to
        // quantiles of the distinct values.
        knots = pick(distinct);
    }
    Eigen::VectorXd kv(used);
    for (int j = 0; j < used; ++j) kv(j) = knots[static_cast<std::size_t>(j)];
    return FromData{CubicSplineBasis(std::move(kv)), k, used};
}

Eigen::RowVectorXd CubicSplineBasis::row(double x) const {
    const auto k = knots_.size();
    Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(k);

    if (x <= knots_(0)) {
        // Linear continuation with the boundary slope (zero curvature at the
        // first knot).
        const double h = knots_(1) - knots_(0);
        Eigen::RowVectorXd slope = -d2_map_.row(1) * (h / 6.0);
        slope(0) -= 1.0 / h;
        slope(1) += 1.0 / h;
        out(0) = 1.0;
        out += (x - knots_(0)) * slope;
        return out;
    }
    if (x >= knots_(k - 1)) {
        const double h = knots_(k - 1) - knots_(k - 2);
        Eigen::RowVectorXd slope = d2_map_.row(k - 2) * (h / 6.0);
        slope(k - 2) -= 1.0 / h;
        slope(k - 1) += 1.0 / h;
        out(k - 1) = 1.0;
        out += (x - knots_(k - 1)) * slope;
        return out;
    }

    // Interval search: j such that knots[j] <= x < knots[j+1].
    const auto* begin = knots_.data();
    auto j = static_cast<Eigen::Index>(std::upper_bound(begin, begin + k, x) - begin) - 1;
    j = std::min(j, k - 2);

    const double h = knots_(j + 1) - knots_(j);
    const double alo = (knots_(j + 1) - x) / h;
    const double ahi = (x - knots_(j)) / h;
    const double clo = (alo * alo * alo - alo) * h * h / 6.0;
    const double chi = (ahi * ahi * ahi - ahi) * h * h / 6.0;
    out(j) = alo;
    out(j + 1) = ahi;
    out += clo * d2_map_.row(j) + chi * d2_map_.row(j + 1);
    return out;
}

Eigen::MatrixXd CubicSplineBasis::matrix(std::span<const double> xs) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(xs.size()), knots_.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = row(xs[i]);
    return out;
}

} // namespace denguecast::gam
