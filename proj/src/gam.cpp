#include "denguecast/gam/gam.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "denguecast/error.hpp"
#include "denguecast/io/csv.hpp"

namespace denguecast::gam {

double gcv_score(double n, double rss, double edf) {
    if (edf >= n)
        throw UndefinedResultError("GCV undefined: effective degrees of freedom " +
                                   std::to_string(edf) + " >= n = " + std::to_string(n));
    const double denom = n - edf;
    return n * rss / (denom * denom);
}

namespace {

struct TermWorkspace {
    std::string name;
    CubicSplineBasis basis;
    Eigen::MatrixXd null_map;         // Z: cardinal coefs = Z * gamma, k x (k-1)
    Eigen::MatrixXd centered_columns; // B * Z, n x (k-1)
    Eigen::MatrixXd penalty;          // Z' S Z, scaled
    double penalty_scale = 1.0;
    Eigen::Index offset = 0; // first gamma index in the stacked parameter vector
    Eigen::Index dim = 0;    // k - 1
};

struct SolveResult {
    Eigen::VectorXd beta;
    Eigen::VectorXd fitted;
    double rss = 0.0;
    double edf = 0.0;
    double gcv = 0.0;
    std::vector<double> edf_per_term;
};

/// Unpivoted LDL^T scan used only to name the offending block when the
/// penalized normal matrix is numerically singular.
Eigen::Index first_singular_index(const Eigen::MatrixXd& a) {
    const Eigen::Index p = a.rows();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd d = Eigen::VectorXd::Zero(p);
    const double tol = 1e-12 * a.diagonal().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < p; ++i) {
        double di = a(i, i);
        for (Eigen::Index j = 0; j < i; ++j) di -= l(i, j) * l(i, j) * d(j);
        if (std::abs(di) <= tol) return i;
        d(i) = di;
        for (Eigen::Index r = i + 1; r < p; ++r) {
            double v = a(r, i);
            for (Eigen::Index j = 0; j < i; ++j) v -= l(r, j) * l(i, j) * d(j);
            l(r, i) = v / di;
        }
    }
    return -1;
}

class PenalizedFitter {
public:
    PenalizedFitter(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const std::vector<std::string>& names, const GamFitOptions& options,
                    std::vector<std::string>& warnings)
        : y_(y), n_(y.size()) {
        const Eigen::Index p_cols = x.cols();
        Eigen::Index offset = 1; // slot 0 is the intercept
        for (Eigen::Index j = 0; j < p_cols; ++j) {
            std::vector<double> col(x.col(j).data(), x.col(j).data() + n_);
            CubicSplineBasis::FromData built =
                CubicSplineBasis::from_quantiles(col, options.basis_dim);
            if (built.reduced())
                warnings.push_back("column " + names[static_cast<std::size_t>(j)] +
                                   ": basis dimension reduced to " +
                                   std::to_string(built.used_k) + " distinct values");
            const Eigen::Index k = built.basis.size();

            Eigen::MatrixXd bmat = built.basis.matrix(col);
            // Absorb the sum-to-zero constraint: gamma parameterizes the null
            // space of the column-sum functional.
            Eigen::VectorXd constraint = bmat.colwise().sum().transpose();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(constraint);
            Eigen::MatrixXd q = qr.householderQ();

            TermWorkspace term{names[static_cast<std::size_t>(j)], std::move(built.basis),
                               q.rightCols(k - 1),           {}, {}, 1.0, offset, k - 1};
            term.centered_columns = bmat * term.null_map;
            Eigen::MatrixXd raw_penalty =
                term.null_map.transpose() * term.basis.penalty() * term.null_map;
            // Normalize the penalty so the lambda window is unit-free.
            const double cross_norm =
                (term.centered_columns.transpose() * term.centered_columns).norm();
            const double pen_norm = raw_penalty.norm();
            term.penalty_scale = pen_norm > 0.0 ? cross_norm / pen_norm : 1.0;
            term.penalty = raw_penalty * term.penalty_scale;
            offset += term.dim;
            terms_.push_back(std::move(term));
        }

        p_ = offset;
        design_ = Eigen::MatrixXd::Ones(n_, p_);
        for (const auto& t : terms_) design_.block(0, t.offset, n_, t.dim) = t.centered_columns;
        xtx_ = design_.transpose() * design_;
        xty_ = design_.transpose() * y_;
    }

    Eigen::Index n_terms() const { return static_cast<Eigen::Index>(terms_.size()); }
    const TermWorkspace& term(std::size_t j) const { return terms_[j]; }
    Eigen::Index n() const { return n_; }
    const Eigen::MatrixXd& design() const { return design_; }

    SolveResult solve(const std::vector<double>& lambdas) const {
        Eigen::MatrixXd a = xtx_;
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            const auto& t = terms_[j];
            a.block(t.offset, t.offset, t.dim, t.dim) += lambdas[j] * t.penalty;
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        const Eigen::VectorXd dvec = ldlt.vectorD().cwiseAbs();
        if (dvec.minCoeff() <= 1e-12 * dvec.maxCoeff()) {
            const Eigen::Index bad = first_singular_index(a);
            throw ValidationError("penalized fit is rank deficient at " + offending_name(bad));
        }

        SolveResult out;
        out.beta = ldlt.solve(xty_);
        out.fitted = design_ * out.beta;
        out.rss = (y_ - out.fitted).squaredNorm();
        const Eigen::MatrixXd influence = ldlt.solve(xtx_); // A^{-1} X'X
        out.edf = influence.trace();
        out.edf_per_term.resize(terms_.size());
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            const auto& t = terms_[j];
            out.edf_per_term[j] = influence.diagonal().segment(t.offset, t.dim).sum();
        }
        out.gcv = gcv_score(static_cast<double>(n_), out.rss, out.edf);
        return out;
    }

    /// Same edf computed from the leverages, a numerical cross-check of the
    /// influence trace.
    double edf_from_leverages(const std::vector<double>& lambdas) const {
        Eigen::MatrixXd a = xtx_;
        for (std::size_t j = 0; j < terms_.size(); ++j) {
            const auto& t = terms_[j];
            a.block(t.offset, t.offset, t.dim, t.dim) += lambdas[j] * t.penalty;
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        const Eigen::MatrixXd solved = ldlt.solve(design_.transpose()); // p x n
        double edf = 0.0;
        for (Eigen::Index i = 0; i < n_; ++i) edf += design_.row(i).dot(solved.col(i));
        return edf;
    }

private:
    std::string offending_name(Eigen::Index index) const {
        if (index == 0) return "the intercept column";
        for (const auto& t : terms_)
            if (index >= t.offset && index < t.offset + t.dim) return "column " + t.name;
        return "an unknown column";
    }

    Eigen::VectorXd y_;
    Eigen::Index n_;
    Eigen::Index p_ = 0;
    std::vector<TermWorkspace> terms_;
    Eigen::MatrixXd design_;
    Eigen::MatrixXd xtx_;
    Eigen::VectorXd xty_;
};

/// Golden-section minimization on [lo, hi]; ties drift toward the upper end so
/// that flat objectives settle at the largest smoothing.
double golden_section(double lo, double hi, const std::function<double(double)>& f) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int iter = 0; iter < 48; ++iter) {
        if (fc >= fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
    }
    return (a + b) / 2.0;
}

} // namespace

GamModel fit_gam(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const std::vector<std::string>& names, const GamFitOptions& options) {
    if (x.rows() != y.size()) throw ValidationError("design rows and response length differ");
    if (x.cols() < 1) throw ValidationError("the model needs at least one covariate column");
    if (static_cast<std::size_t>(x.cols()) != names.size())
        throw ValidationError("one column name per covariate required");
    if (x.rows() < x.cols() * options.basis_dim)
        throw InsufficientDataError("need at least " +
                                    std::to_string(x.cols() * options.basis_dim) +
                                    " rows to fit " + std::to_string(x.cols()) +
                                    " smooths of dimension " + std::to_string(options.basis_dim));

    GamModel model;
    PenalizedFitter fitter(x, y, names, options, model.warnings);

    const auto n_terms = static_cast<std::size_t>(fitter.n_terms());
    std::vector<double> lambdas(n_terms, 1.0);
    SolveResult best;

    if (options.fixed_lambdas) {
        if (options.fixed_lambdas->size() != n_terms)
            throw ValidationError("fixed_lambdas must supply one value per column");
        lambdas = *options.fixed_lambdas;
        best = fitter.solve(lambdas);
    } else {
        best = fitter.solve(lambdas);
        model.converged = false;
        for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
            const double previous = best.gcv;
            for (std::size_t j = 0; j < n_terms; ++j) {
                const double log_best = golden_section(
                    options.log10_lambda_min, options.log10_lambda_max, [&](double t) {
                        auto trial = lambdas;
                        trial[j] = std::pow(10.0, t);
                        return fitter.solve(trial).gcv;
                    });
                lambdas[j] = std::pow(10.0, log_best);
            }
            best = fitter.solve(lambdas);
            if (previous - best.gcv < options.rel_tol * std::max(previous, 1e-300)) {
                model.converged = true;
                break;
            }
        }
        if (!model.converged)
            model.warnings.push_back("GCV search did not converge in " +
                                     std::to_string(options.max_cycles) + " cycles");
    }

    model.n_train = fitter.n();
    model.intercept = best.beta(0);
    model.fitted = best.fitted;
    model.gcv = best.gcv;
    model.edf_total = best.edf;
    model.edf_by_leverage = fitter.edf_from_leverages(lambdas);
    model.sigma2 = best.rss / (static_cast<double>(fitter.n()) - best.edf);
    for (std::size_t j = 0; j < n_terms; ++j) {
        const auto& t = fitter.term(j);
        SmoothTerm term{t.name, t.basis, Eigen::VectorXd(), lambdas[j], t.penalty_scale,
                        best.edf_per_term[j]};
        term.coefs = t.null_map * best.beta.segment(t.offset, t.dim);
        model.terms.push_back(std::move(term));
    }
    return model;
}

GamModel fit_gam(const lags::DesignMatrix& design, const GamFitOptions& options) {
    std::vector<std::string> names(lags::DesignMatrix::column_names().begin(),
                                   lags::DesignMatrix::column_names().end());
    return fit_gam(design.columns, design.response, names, options);
}

Eigen::VectorXd predict_gam(const GamModel& model, const Eigen::MatrixXd& rows,
                            std::vector<std::uint8_t>* extrapolated) {
    if (static_cast<std::size_t>(rows.cols()) != model.terms.size())
        throw ValidationError("prediction rows must have " + std::to_string(model.terms.size()) +
                              " columns");
    Eigen::VectorXd out = Eigen::VectorXd::Constant(rows.rows(), model.intercept);
    if (extrapolated) extrapolated->assign(static_cast<std::size_t>(rows.rows()), 0);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (std::size_t j = 0; j < model.terms.size(); ++j) {
            const auto& term = model.terms[j];
            const double xij = rows(i, static_cast<Eigen::Index>(j));
            out(i) += term.basis.row(xij).dot(term.coefs);
            if (extrapolated && !term.basis.in_range(xij))
                (*extrapolated)[static_cast<std::size_t>(i)] = 1;
        }
    }
    return out;
}

// --- serialization ---------------------------------------------------------

namespace {
constexpr const char* kGamFormatTag = "denguecast-gam";
constexpr int kGamFormatVersion = 1;
} // namespace

std::string serialize_gam(const GamModel& model) {
    std::ostringstream out;
    const auto num = [](double v) { return io::format_double(v); };
    out << kGamFormatTag << ' ' << kGamFormatVersion << '\n';
    out << "n_train " << model.n_train << '\n';
    out << "intercept " << num(model.intercept) << '\n';
    out << "sigma2 " << num(model.sigma2) << '\n';
    out << "gcv " << num(model.gcv) << '\n';
    out << "edf_total " << num(model.edf_total) << '\n';
    out << "converged " << (model.converged ? 1 : 0) << '\n';
    out << "terms " << model.terms.size() << '\n';
    for (const auto& t : model.terms) {
        out << "term " << t.name << '\n';
        out << "lambda " << num(t.lambda) << '\n';
        out << "penalty_scale " << num(t.penalty_scale) << '\n';
        out << "edf " << num(t.edf) << '\n';
        out << "knots " << t.basis.size();
        for (Eigen::Index i = 0; i < t.basis.size(); ++i) out << ' ' << num(t.basis.knots()(i));
        out << '\n';
        out << "coefs " << t.coefs.size();
        for (Eigen::Index i = 0; i < t.coefs.size(); ++i) out << ' ' << num(t.coefs(i));
        out << '\n';
    }
    return out.str();
}

namespace {

class LineReader {
public:
    explicit LineReader(const std::string& text) : stream_(text) {}

    std::istringstream expect(const std::string& key) {
        std::string line;
        if (!std::getline(stream_, line))
            throw ValidationError("truncated model file, expected '" + key + "'");
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head != key)
            throw ValidationError("expected '" + key + "', found '" + head + "'");
        return ls;
    }

private:
    std::istringstream stream_;
};

} // namespace

GamModel deserialize_gam(const std::string& text) {
    LineReader reader(text);
    {
        auto ls = reader.expect(kGamFormatTag);
        int version = 0;
        ls >> version;
        if (version != kGamFormatVersion)
            throw ValidationError("unsupported model format version " + std::to_string(version));
    }
    GamModel model;
    reader.expect("n_train") >> model.n_train;
    reader.expect("intercept") >> model.intercept;
    reader.expect("sigma2") >> model.sigma2;
    reader.expect("gcv") >> model.gcv;
    reader.expect("edf_total") >> model.edf_total;
    int converged = 1;
    reader.expect("converged") >> converged;
    model.converged = converged != 0;
    std::size_t n_terms = 0;
    reader.expect("terms") >> n_terms;
    for (std::size_t j = 0; j < n_terms; ++j) {
        std::string name;
        reader.expect("term") >> name;
        double lambda = 0, scale = 0, edf = 0;
        reader.expect("lambda") >> lambda;
        reader.expect("penalty_scale") >> scale;
        reader.expect("edf") >> edf;
        Eigen::Index k = 0;
        auto ks = reader.expect("knots");
        ks >> k;
        Eigen::VectorXd knots(k);
        for (Eigen::Index i = 0; i < k; ++i)
            if (!(ks >> knots(i))) throw ValidationError("truncated knot list");
        Eigen::Index kc = 0;
        auto cs = reader.expect("coefs");
        cs >> kc;
        if (kc != k) throw ValidationError("knot/coefficient length mismatch");
        Eigen::VectorXd coefs(kc);
        for (Eigen::Index i = 0; i < kc; ++i)
            if (!(cs >> coefs(i))) throw ValidationError("truncated coefficient list");
        model.terms.push_back(
            {name, CubicSplineBasis(std::move(knots)), std::move(coefs), lambda, scale, edf});
    }
    return model;
}

} // namespace denguecast::gam
