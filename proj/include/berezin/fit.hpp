#pragma once

#include "berezin/core.hpp"

#include <vector>

namespace bq {

/// Least-squares line through (log x, log y).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<double> residuals;
};

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Errors of an asymptotic statement over a grid of hbar values, with their log-log fit.
struct AsymptoticFit {
    std::vector<double> hbar;
    std::vector<cplx> values;
    std::vector<cplx> targets;
    std::vector<double> errors;
    LogLogFit fit;
    bool exact = false;  // every error at rounding level; slope undefined
};

/// Fills errors from values/targets and fits them; flags the exact case.
void finish_fit(AsymptoticFit& f, double exact_tol = 1e-12);

}  // namespace bq
