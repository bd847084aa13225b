#include "otcnet/baselines/ols.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "otcnet/core/error.hpp"

namespace otcnet {

namespace {

Eigen::MatrixXd to_eigen(const DesignMatrix& x, const std::vector<std::size_t>& keep) {
    Eigen::MatrixXd m(x.rows, keep.size());
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t j = 0; j < keep.size(); ++j) m(r, j) = x.at(r, keep[j]);
    return m;
}

}  // namespace

OlsFit ols_fit(const DesignMatrix& x, std::span<const double> y, const OlsOptions& options) {
    if (x.rows == 0) throw NumericError("regression has zero rows");
    if (x.data.size() != x.rows * x.cols()) throw NumericError("design matrix storage does not match its shape");
    if (y.size() != x.rows) throw NumericError("response length does not match design rows");
    {
        auto sorted = x.names;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) throw NumericError("duplicate design column '" + *dup + "'");
    }
    if (x.rows < x.cols() && !options.drop_dependent)
        throw NumericError("regression has fewer rows (" + std::to_string(x.rows) + ") than columns (" +
                           std::to_string(x.cols()) + ")");

    std::vector<std::size_t> all(x.cols());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    const Eigen::MatrixXd a = to_eigen(x, all);
    const Eigen::Map<const Eigen::VectorXd> b(y.data(), static_cast<Eigen::Index>(y.size()));

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(options.rank_tol);
    const auto rank = static_cast<std::size_t>(qr.rank());

    OlsFit fit;
    fit.rank = rank;
    std::vector<std::size_t> keep = all;
    if (rank < x.cols()) {
        // Attribute the deficiency to the later columns: scan left to right and
        // keep a column only if it raises the rank of the columns kept so far.
        std::vector<std::size_t> dependent, kept;
        for (std::size_t j = 0; j < x.cols(); ++j) {
            kept.push_back(j);
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> sub(to_eigen(x, kept));
            sub.setThreshold(options.rank_tol);
            if (static_cast<std::size_t>(sub.rank()) < kept.size()) {
                kept.pop_back();
                dependent.push_back(j);
            }
        }
        std::sort(dependent.begin(), dependent.end());
        for (auto j : dependent) fit.dropped.push_back(x.names[j]);
        if (!options.drop_dependent) {
            std::string list;
            for (const auto& nme : fit.dropped) list += (list.empty() ? "" : ", ") + nme;
            throw NumericError("rank-deficient design (rank " + std::to_string(rank) + " of " +
                               std::to_string(x.cols()) + "); dependent columns: " + list);
        }
        keep.clear();
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (!std::binary_search(dependent.begin(), dependent.end(), j)) keep.push_back(j);
    }

    fit.coefficients.assign(x.cols(), 0.0);
    Eigen::VectorXd beta;
    if (keep.size() == x.cols()) {
        beta = qr.solve(b);
    } else {
        const Eigen::MatrixXd reduced = to_eigen(x, keep);
        beta = reduced.colPivHouseholderQr().solve(b);
    }
    for (std::size_t j = 0; j < keep.size(); ++j) fit.coefficients[keep[j]] = beta(static_cast<Eigen::Index>(j));

    const Eigen::Map<const Eigen::VectorXd> coef(fit.coefficients.data(), static_cast<Eigen::Index>(x.cols()));
    const Eigen::VectorXd fitted = a * coef;
    fit.fitted.assign(fitted.data(), fitted.data() + fitted.size());
    fit.residuals.resize(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) fit.residuals[r] = y[r] - fit.fitted[r];
    return fit;
}

}  // namespace otcnet
