#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace otcnet {

/// Row-major regression design with named columns.
struct DesignMatrix {
    std::vector<std::string> names;
    std::size_t rows = 0;
    std::vector<double> data;

    std::size_t cols() const { return names.size(); }
    double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }
};

struct OlsOptions {
    /// Drop linearly dependent columns (coefficient 0) instead of failing.
    bool drop_dependent = false;
    /// Pivot threshold relative to the largest pivot.
    double rank_tol = 1e-10;
};

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> fitted;
    std::vector<double> residuals;
    std::vector<std::string> dropped;
    std::size_t rank = 0;
};

/// Least squares by column-pivoted Householder QR. Rank deficiency throws
/// NumericError listing the dependent columns unless drop_dependent is set.
OlsFit ols_fit(const DesignMatrix& x, std::span<const double> y, const OlsOptions& options = {});

}  // namespace otcnet
