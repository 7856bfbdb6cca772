#include "berezin/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bq {

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_fit: need >= 2 matching points");
    const std::size_t m = x.size();
    std::vector<double> lx(m), ly(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("loglog_fit: non-positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(m);
    my /= double(m);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    LogLogFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ly[i] - (f.intercept + f.slope * lx[i]);
        f.residuals.push_back(r);
        sse += r * r;
    }
    f.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
    return f;
}

void finish_fit(AsymptoticFit& f, double exact_tol) {
    f.errors.clear();
    bool exact = true;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double e = std::abs(f.values[i] - f.targets[i]);
        f.errors.push_back(e);
        if (e > exact_tol * std::max(1.0, std::abs(f.targets[i]))) exact = false;
    }
    f.exact = exact;
    if (exact) {
        f.fit = LogLogFit{};
        f.fit.slope = std::numeric_limits<double>::quiet_NaN();
        f.fit.intercept = std::numeric_limits<double>::quiet_NaN();
        f.fit.r2 = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    f.fit = loglog_fit(f.hbar, f.errors);
}

}  // namespace bq
