#include "berezin/kernels.hpp"

#include "berezin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bq {

namespace {

using ldouble = long double;
using lcplx = std::complex<long double>;
constexpr ldouble kEpsL = std::numeric_limits<ldouble>::epsilon();
constexpr double kEps = std::numeric_limits<double>::epsilon();

cplx to_c(lcplx v) { return {double(v.real()), double(v.imag())}; }

}  // namespace

const char* route_name(KernelRoute r) {
    switch (r) {
        case KernelRoute::Series: return "series";
        case KernelRoute::BesselClosedForm: return "bessel";
        case KernelRoute::Asymptotic: return "asymptotic";
    }
    return "?";
}

double log_coherent_constant(int l, const ModelParams& params) {
    return 0.5 * (log_pochhammer(double(params.n), unsigned(l)) -
                  log_pochhammer(params.n + params.p, unsigned(l)));
}

KernelValue coherent_series(cplx t, const ModelParams& params, double tol) {
    if (params.p == 0.0) {
        // c_{l,0} = 1: the series is exp(t).
        const cplx v = std::exp(t);
        return {v, KernelRoute::Series, 4 * kEps * std::abs(v)};
    }
    const lcplx tl(t.real(), t.imag());
    const ldouble n = params.n, np = params.n + params.p;
    // term_l = c_l t^l / l!, c_{l+1}/c_l = sqrt((n+l)/(n+p+l)).
    lcplx term = 1, sum = 1;
    ldouble abs_sum = 1;
    int run = 0;
    unsigned l = 0;
    for (;; ++l) {
        term *= tl * std::sqrt((n + l) / (np + l)) / ldouble(l + 1);
        sum += term;
        abs_sum += std::abs(term);
        run = std::abs(term) < tol * std::abs(sum) ? run + 1 : 0;
        if (run >= 3 && ldouble(l + 2) > std::abs(tl)) break;
        if (l > 1000000) break;
    }
    // Ratio after l: |t| sqrt((n+l+1)/(n+p+l+1))/(l+2) < 1 once l is past |t|.
    const ldouble r = std::abs(tl) * std::sqrt(std::max<ldouble>(1, (n + l + 1) / (np + l + 1))) / (l + 2);
    const ldouble tail = r < 1 ? std::abs(term) * r / (1 - r) : std::abs(term);
    return {to_c(sum), KernelRoute::Series, double(tail + 4 * kEpsL * abs_sum) + kEps * double(std::abs(sum))};
}

KernelValue coherent_eval(const Point& x, const Point& z, const ModelParams& params, double tol) {
    require_on_sphere(x, "coherent_eval");
    return coherent_series(cdot(x, z) / params.hbar, params, tol);
}

CoeffVector coherent_coeffs(const Point& z, const BasisPtr& basis) {
    return {basis, Side::SphereBasis, basis->coherent_coefficients(z)};
}

double coherent_truncation_tail(const Point& z, const ModelParams& params) {
    const ldouble t = cnorm(z) / params.hbar;
    if (t == 0) return 0.0;
    const ldouble n = params.n, np = params.n + params.p;
    // Leading omitted term c_{L+1} t^{L+1}/(L+1)! in log form, then continue the sum.
    ldouble logterm = log_coherent_constant(params.L + 1, params) + (params.L + 1) * std::log(t) -
                      std::lgamma(ldouble(params.L) + 2);
    ldouble term = std::exp(logterm), sum = 0;
    for (int l = params.L + 1; l < params.L + 100000; ++l) {
        sum += term;
        term *= t * std::sqrt((n + l) / (np + l)) / ldouble(l + 1);
        if (term < kEpsL * sum && ldouble(l) > t) break;
    }
    return double(sum);
}

KernelValue kernel_T_of(cplx u, const ModelParams& params, KernelRoute route) {
    const double b = params.n + params.p;
    if (route == KernelRoute::Series) {
        const EvalResult r = hyp0f1_series(b, u);
        return {r.value, KernelRoute::Series, r.est_abs_error};
    }
    if (route == KernelRoute::BesselClosedForm) {
        if (u == cplx(0)) return {1.0, route, 0.0};
        const cplx s = principal_sqrt(u);
        const EvalResult r = bessel_i(b - 1.0, 2.0 * s);
        const cplx pref = std::exp(log_gamma(b)) * principal_pow(u, (1.0 - b) / 2.0);
        return {pref * r.value, route, std::abs(pref) * r.est_abs_error + kEps * std::abs(pref * r.value)};
    }
    throw DomainError("kernel_T: use coherent_inner_asymptotic for the asymptotic route");
}

KernelValue kernel_T(const Point& z, const Point& w, const ModelParams& params, KernelRoute route) {
    const double h2 = params.hbar * params.hbar;
    return kernel_T_of(cdot(z, w) / h2, params, route);
}

double kernel_truncation_tail(const Point& z, const Point& w, const ModelParams& params) {
    const ldouble u = std::abs(cdot(z, w)) / (ldouble(params.hbar) * params.hbar);
    if (u == 0) return 0.0;
    const ldouble b = params.n + params.p;
    const int L = params.L;
    ldouble term = std::exp((L + 1) * std::log(u) - std::lgamma(ldouble(L) + 2) -
                            log_pochhammer(double(b), unsigned(L + 1)));
    ldouble sum = 0;
    for (int l = L + 1; l < L + 100000; ++l) {
        sum += term;
        term *= u / (ldouble(l + 1) * (b + l));
        if (term < kEpsL * sum && ldouble(l) * l > u) break;
    }
    return double(sum);
}

KernelValue coherent_inner(const Point& z, const Point& w, const ModelParams& params) {
    return kernel_T(w, z, params, KernelRoute::Series);
}

cplx coherent_inner_truncated(const Point& z, const Point& w, const BasisPtr& basis) {
    const Eigen::VectorXcd az = basis->coherent_coefficients(z);
    const Eigen::VectorXcd aw = basis->coherent_coefficients(w);
    return aw.dot(az);  // sum_k a_k(z) conj(a_k(w))
}

KernelValue coherent_inner_asymptotic(const Point& z, const Point& w, const ModelParams& params,
                                      int order, AsymptoticBranch branch) {
    if (order != 0 && order != 1) throw DomainError("coherent_inner_asymptotic: order must be 0 or 1");
    const cplx zeta = cdot(w, z);
    if (zeta == cplx(0)) throw DomainError("coherent_inner_asymptotic: z.w = 0");
    const double h = params.hbar;
    const double b = params.n + params.p;
    const double c = (b - 1.5) * (b - 0.5);
    const double pref = std::exp(log_gamma(b)) / (2.0 * std::sqrt(std::numbers::pi));
    const double expo = 0.5 * (0.5 - b);
    const double mod = std::abs(zeta);

    if (branch == AsymptoticBranch::Principal) {
        const double arg = zeta.imag() == 0.0 && zeta.real() < 0.0 ? std::numbers::pi : std::arg(zeta);
        if (std::abs(arg) >= std::numbers::pi) throw DomainError("coherent_inner_asymptotic: z.w on the cut");
        if (std::abs(arg) > std::numbers::pi - kCutMargin) return coherent_inner(z, w, params);
        const cplx s = principal_sqrt(zeta);
        const cplx power = principal_pow(zeta / (h * h), expo);
        cplx bracket = 1.0;
        if (order == 1) bracket -= c * h / (4.0 * s);
        const cplx v = pref * power * std::exp(2.0 * s / h) * bracket;
        // The first omitted term is O(hbar^{order+1}) relative.
        const double next = std::pow(std::abs(c) * h / (4.0 * std::sqrt(mod)) + h / std::sqrt(mod), order + 1);
        return {v, KernelRoute::Asymptotic, std::abs(v) * next};
    }

    // Square root and power taken with Arg in [0, 2 pi).
    double theta = std::arg(zeta);
    if (theta < 0) theta += 2.0 * std::numbers::pi;
    const cplx s = std::polar(std::sqrt(mod), theta / 2.0);
    const cplx power = std::polar(std::pow(mod / (h * h), expo), expo * theta);
    const cplx phase = std::polar(1.0, std::numbers::pi * (b - 0.5));
    cplx grow = std::exp(2.0 * s / h), decay = std::exp(-2.0 * s / h) * phase;
    if (order == 1) {
        grow *= 1.0 - c * h / (4.0 * s);
        decay *= 1.0 + c * h / (4.0 * s);
    }
    const cplx v = pref * power * (grow + decay);
    const double next = std::pow(std::abs(c) * h / (4.0 * std::sqrt(mod)) + h / std::sqrt(mod), order + 1);
    return {v, KernelRoute::Asymptotic, std::abs(pref * power) * (std::abs(grow) + std::abs(decay)) * next};
}

cplx kernel_H(const Point& x, const Point& y, int n) {
    const cplx t = cdot(x, y);
    if (std::abs(t - 1.0) < 1e-14) throw DomainError("kernel_H: pole at x.y = 1");
    if (std::abs(t) < 1.0) return hyp2f1_geom(unsigned(n), t);
    return std::pow(1.0 - t, -double(n));
}

CoeffVector kernel_H_coeffs(const Point& y, const BasisPtr& basis) {
    require_on_sphere(y, "kernel_H_coeffs");
    return {basis, Side::SphereBasis, basis->sphere_values(y).conjugate()};
}

cplx inverse_transform_integral(const SphereFunction& f, const Point& x, const ModelParams& params,
                                const QuadratureRule& radial, const QuadratureRule& sphere) {
    require_on_sphere(x, "inverse_transform_integral");
    return integrate_cn([&](const Point& z) { return f(z) * coherent_eval(x, z, params).value; },
                        radial, sphere);
}

EvalResult g_function(cplx z, double a) {
    if (!(a > 0.0)) throw DomainError("g_function: a must be positive");
    const lcplx zl(z.real(), z.imag());
    const ldouble al = a;
    lcplx term = 1, sum = 1;
    ldouble abs_sum = 1;
    int run = 0;
    unsigned l = 0;
    for (;; ++l) {
        term *= zl * std::sqrt((al * (l + 1) + 1) / (al * l + 1)) / ldouble(l + 1);
        sum += term;
        abs_sum += std::abs(term);
        run = std::abs(term) < kEpsL * std::abs(sum) ? run + 1 : 0;
        if (run >= 3 && ldouble(l) > 2 * std::abs(zl)) break;
        if (l > 1000000) break;
    }
    return {to_c(sum), double(std::abs(term) + 4 * kEpsL * abs_sum * std::sqrt(ldouble(l))), l + 2};
}

cplx g_asymptotic(cplx z, double a, double a1, double a2, double cone) {
    if (!(z.real() > 0.0) || std::abs(z.imag()) > cone * z.real())
        throw DomainError("g_asymptotic: z outside the cone |Im z| <= C Re z");
    return std::sqrt(a) * std::sqrt(z) * std::exp(z) * (1.0 + a1 / z + a2 / (z * z));
}

double g_relative_deviation(double z, double a) {
    const lcplx zl(z, 0);
    const lcplx lead = std::sqrt(ldouble(a)) * std::sqrt(zl) * std::exp(zl);
    const EvalResult g = g_function(z, a);
    return double(lcplx(g.value.real(), g.value.imag()).real() / lead.real() - 1);
}

GCoefficientFit fit_g_coefficients(int n, const std::vector<double>& window) {
    if (n < 2) throw DomainError("fit_g_coefficients: n must be >= 2");
    if (window.empty()) throw ConfigError("fit_g_coefficients: empty window");
    GCoefficientFit fit;
    fit.a = 1.0 / (n - 1);
    fit.window = window;
    for (double z : window) {
        const double r1 = z * g_relative_deviation(z, fit.a);
        const double r2 = 2 * z * g_relative_deviation(2 * z, fit.a);
        fit.raw.push_back(r1);
        fit.richardson.push_back(2 * r2 - r1);
        fit.a2_estimates.push_back(2 * z * (r1 - r2));
    }
    double s = 0, s2 = 0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        s += fit.richardson[i];
        s2 += fit.a2_estimates[i];
    }
    fit.a1 = s / double(window.size());
    fit.a2 = s2 / double(window.size());
    for (double e : fit.richardson) fit.a1_spread = std::max(fit.a1_spread, std::abs(e - fit.a1));
    // Three significant digits: every estimate rounds to the same 3-digit value.
    fit.stable_3_digits = fit.a1_spread <= 5e-4 * std::abs(fit.a1);
    return fit;
}

}  // namespace bq
