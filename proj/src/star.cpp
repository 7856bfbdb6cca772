#include "berezin/star.hpp"

#include "berezin/kernels.hpp"
#include "berezin/parallel.hpp"
#include "berezin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bq {

namespace {

void require_nonzero(const Point& w, const char* who) {
    if (!(cnorm(w) > 0.0)) throw DomainError(std::string(who) + ": point at the origin");
}

double log_det_metric(const Point& w) {
    const Eigen::MatrixXcd g = kahler_metric(w);
    return std::log(std::abs(g.determinant()));
}

// Central difference along a real or imaginary coordinate direction, with one Richardson step.
template <class F>
cplx richardson_diff(const F& f, const Point& x, int comp, cplx dir, double h, double& gap) {
    auto D = [&](double s) {
        Point xp = x, xm = x;
        xp[comp] += s * dir;
        xm[comp] -= s * dir;
        return (f(xp) - f(xm)) / (2.0 * s);
    };
    const cplx d1 = D(h), d2 = D(h / 2);
    const cplx r = (4.0 * d2 - d1) / 3.0;
    gap = std::max(gap, std::abs(r - d2));
    return r;
}

// d_i dbar_j of a real function: (1/4)[(f_xx + f_yy) + i(f_xy - f_yx)] in coordinates (x_i, x_j).
double curvature_at_step(const Point& w, double h) {
    const int n = int(w.size());
    const Eigen::MatrixXcd ginv = kahler_metric_inverse(w);
    auto f = [&](const Point& x) { return log_det_metric(x); };
    auto second = [&](int i, cplx di, int j, cplx dj) {
        Point pp = w, pm = w, mp = w, mm = w;
        pp[i] += h * di; pp[j] += h * dj;
        pm[i] += h * di; pm[j] -= h * dj;
        mp[i] -= h * di; mp[j] += h * dj;
        mm[i] -= h * di; mm[j] -= h * dj;
        return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
    };
    const cplx I(0, 1);
    cplx R = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double xx = second(i, 1.0, j, 1.0);
            const double yy = second(i, I, j, I);
            const double xy = second(i, 1.0, j, I);
            const double yx = second(i, I, j, 1.0);
            const cplx dd = 0.25 * cplx(xx + yy, xy - yx);
            R += ginv(j, i) * dd;
        }
    return R.real();
}

}  // namespace

Eigen::MatrixXcd kahler_metric(const Point& w) {
    require_nonzero(w, "kahler_metric");
    const int n = int(w.size());
    const double r = cnorm(w);
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = ((i == j ? 1.0 : 0.0) - std::conj(w[i]) * w[j] / (2.0 * r * r)) / r;
    return g;
}

Eigen::MatrixXcd kahler_metric_inverse(const Point& w) {
    require_nonzero(w, "kahler_metric_inverse");
    const int n = int(w.size());
    const double r = cnorm(w);
    Eigen::MatrixXcd gi(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gi(i, j) = r * ((i == j ? 1.0 : 0.0) + std::conj(w[i]) * w[j] / (r * r));
    return gi;
}

double scalar_curvature_closed(const Point& w) {
    require_nonzero(w, "scalar_curvature_closed");
    const double n = double(w.size());
    return -n * (n - 1.0) / (2.0 * cnorm(w));
}

KahlerData kahler_data(const Point& w, double h_fd) {
    require_nonzero(w, "kahler_data");
    KahlerData k;
    k.w = w;
    k.metric = kahler_metric(w);
    k.inverse = kahler_metric_inverse(w);
    k.det = k.metric.determinant().real();
    const double h = h_fd * cnorm(w);
    const double r1 = curvature_at_step(w, h);
    const double r2 = curvature_at_step(w, h / 2);
    k.scalar_curvature = (4.0 * r2 - r1) / 3.0;
    k.curvature_gap = std::abs(k.scalar_curvature - r2);
    return k;
}

cplx star_operator_route(const OperatorMatrix& A, const OperatorMatrix& B, const Point& z, const Point& w) {
    return berezin_symbol(A * B, z, w);
}

double star_min_cutoff(const Point& z, double hbar) { return 10.0 + 4.0 * cnorm(z) / hbar; }

namespace {

void check_cutoff(const Point& z, double hbar, const QuadratureRule& radial, const char* who) {
    const double need = star_min_cutoff(z, hbar);
    if (radial.meta.cutoff < need)
        throw ConfigError(std::string(who) + ": radial cutoff " + std::to_string(radial.meta.cutoff) +
                          " below 10 + 4|z|/hbar = " + std::to_string(need));
}

}  // namespace

cplx star_integral_route(const OperatorMatrix& A, const OperatorMatrix& B, const Point& z,
                         const QuadratureRule& radial, const QuadratureRule& sphere) {
    const ModelParams& prm = A.params();
    if (B.params().hbar != prm.hbar || B.basis()->size() != A.basis()->size())
        throw DomainError("star_integral_route: operators on different spaces");
    check_cutoff(z, prm.hbar, radial, "star_integral_route");
    const Basis& basis = *A.basis();
    const Eigen::VectorXcd az = basis.coherent_coefficients(z);
    const Eigen::VectorXcd left = A.entries().adjoint() * az;  // K_A(z, u) = left.dot(a_u)
    const Eigen::VectorXcd right = B.entries() * az;           // K_B(u, z) = a_u.dot(right)
    const cplx Tzz = az.dot(az);
    const cplx s = integrate_cn(
        [&](const Point& u) {
            const Eigen::VectorXcd au = basis.coherent_coefficients(u);
            return left.dot(au) * au.dot(right);
        },
        radial, sphere);
    return s / Tzz;
}

cplx star_integral_printed(const PointFunction& f1_uz, const PointFunction& f2_zu, const Point& z,
                           const ModelParams& params, const QuadratureRule& radial, const QuadratureRule& sphere) {
    params.validate();
    check_cutoff(z, params.hbar, radial, "star_integral_printed");
    const int n = params.n;
    const double h = params.hbar, b = n + params.p, nu = b - 1.0;
    const double rz = cnorm(z);
    require_nonzero(z, "star_integral_printed");
    const double pi = std::numbers::pi;
    // Printed prefactor and |u|^p K_p du dubar rewritten against dm.
    const double printed = 2.0 / (std::pow(pi * h, n) * h);
    const double lebesgue_per_dm = std::exp(log_gamma(b)) * std::pow(pi * h * h, n) * std::pow(h, params.p) / 2.0;
    const cplx Iz = bessel_i(nu, cplx(2.0 * rz / h)).value;
    const cplx s = integrate_cn(
        [&](const Point& u) {
            const cplx uz = cdot(u, z);
            cplx ker;
            if (std::abs(uz) < 1e-12 * rz * cnorm(u)) {
                const cplx F = hyp0f1(b, uz / (h * h)).value;
                ker = std::pow(h, -2.0 * nu) * std::pow(rz, nu) * std::norm(F) / std::exp(2.0 * log_gamma(b));
            } else {
                const cplx I1 = bessel_i(nu, 2.0 * principal_sqrt(uz) / h).value;
                const cplx I2 = bessel_i(nu, 2.0 * principal_sqrt(std::conj(uz)) / h).value;
                ker = std::pow(std::abs(uz) / rz, 1.0 - params.p - n) * I1 * I2;
            }
            return f1_uz(u) * f2_zu(u) * ker;
        },
        radial, sphere);
    return printed * lebesgue_per_dm * s / Iz;
}

cplx xi_over_g(const Point& z, const Point& w, double nu, double mu, double p) {
    const int n = int(w.size());
    const double rz = cnorm(z), rw = cnorm(w);
    const cplx xi = std::pow(rz, mu - 0.5) * std::pow(rw, p - 0.5) * principal_pow(cdot(z, w), 0.25 - mu / 2) *
                    principal_pow(cdot(w, z), 0.25 - nu / 2);
    return xi * 2.0 * std::pow(rw, n);
}

Eigen::MatrixXcd xi_over_g_hessian_fd(const Point& z, double nu, double mu, double p, double h_fd) {
    require_nonzero(z, "xi_over_g_hessian_fd");
    const int n = int(z.size());
    const cplx I(0, 1);
    auto at_step = [&](double h) {
        auto second = [&](int i, cplx di, int j, cplx dj) {
            Point pp = z, pm = z, mp = z, mm = z;
            pp[i] += h * di; pp[j] += h * dj;
            pm[i] += h * di; pm[j] -= h * dj;
            mp[i] -= h * di; mp[j] += h * dj;
            mm[i] -= h * di; mm[j] -= h * dj;
            return (xi_over_g(z, pp, nu, mu, p) - xi_over_g(z, pm, nu, mu, p) - xi_over_g(z, mp, nu, mu, p) +
                    xi_over_g(z, mm, nu, mu, p)) / (4.0 * h * h);
        };
        Eigen::MatrixXcd H(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx xx = second(i, 1.0, j, 1.0), yy = second(i, I, j, I);
                const cplx xy = second(i, 1.0, j, I), yx = second(i, I, j, 1.0);
                H(i, j) = 0.25 * ((xx + yy) + I * (xy - yx));
            }
        return H;
    };
    const double h = h_fd * cnorm(z);
    return (4.0 * at_step(h / 2) - at_step(h)) / 3.0;
}

Eigen::MatrixXcd xi_over_g_hessian_closed(const Point& z, double nu, double mu, double p) {
    require_nonzero(z, "xi_over_g_hessian_closed");
    const int n = int(z.size());
    const double r = cnorm(z), r2 = r * r;
    const double b = n + p;
    const double pref = std::pow(r, b - nu) / (r2 * r2);
    Eigen::MatrixXcd H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx zjzi = z[j] * std::conj(z[i]);
            H(i, j) = pref * ((b - 0.5) * ((i == j ? r2 : 0.0) - zjzi) + zjzi * (b - nu) * (b - mu));
        }
    return H;
}

Eigen::MatrixXcd xi_over_g_hessian_derived(const Point& z, double nu, double mu, double p) {
    require_nonzero(z, "xi_over_g_hessian_derived");
    const int n = int(z.size());
    const double r = cnorm(z), r2 = r * r;
    const double b = n + p;
    const double pref = std::pow(r, b - nu) / (r2 * r2);
    Eigen::MatrixXcd H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx zjzi = z[j] * std::conj(z[i]);
            H(i, j) = pref * ((b - 0.5) * ((i == j ? r2 : 0.0) - zjzi) + 0.5 * zjzi * (b - nu) * (b - mu));
        }
    return H;
}

StarFirstOrder star_semiclassical_term(const OperatorMatrix& A, const OperatorMatrix& B, const Point& z,
                                       double h_fd) {
    require_nonzero(z, "star_semiclassical_term");
    const ModelParams& prm = A.params();
    const int n = prm.n;
    const double p = prm.p;
    const double r = cnorm(z);
    const Eigen::MatrixXcd gi = kahler_metric_inverse(z);
    const double h = h_fd * r;

    StarFirstOrder s;
    const cplx fa = berezin_symbol(A, z, z), fb = berezin_symbol(B, z, z);
    s.product = fa * fb;

    // f(z, w) is holomorphic in w, f(w, z) antiholomorphic: both derivatives are real-direction ones.
    auto fa_zw = [&](const Point& w) { return berezin_symbol(A, z, w); };
    auto fa_wz = [&](const Point& w) { return berezin_symbol(A, w, z); };
    auto fb_zw = [&](const Point& w) { return berezin_symbol(B, z, w); };
    auto fb_wz = [&](const Point& w) { return berezin_symbol(B, w, z); };
    double gap = 0;
    const auto nn = static_cast<std::size_t>(n);
    std::vector<cplx> d_fa_zw(nn), dbar_fb_wz(nn), dbar_fa_wz(nn), d_fb_zw(nn);
    for (int i = 0; i < n; ++i) {
        const auto k = std::size_t(i);
        d_fa_zw[k] = richardson_diff(fa_zw, z, i, 1.0, h, gap);
        dbar_fb_wz[k] = richardson_diff(fb_wz, z, i, 1.0, h, gap);
        dbar_fa_wz[k] = richardson_diff(fa_wz, z, i, 1.0, h, gap);
        d_fb_zw[k] = richardson_diff(fb_zw, z, i, 1.0, h, gap);
    }
    s.fd_gap = gap;

    cplx dprinted = 0, derived = 0, mprinted = 0, msecond = 0;
    const double r2 = r * r, r4 = r2 * r2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx gji = gi(j, i);
            const double dij = i == j ? 1.0 : 0.0;
            const cplx zjzi = z[j] * std::conj(z[i]);
            dprinted += gji * (d_fa_zw[std::size_t(i)] + dbar_fb_wz[std::size_t(j)]);
            derived += gji * dbar_fa_wz[std::size_t(j)] * d_fb_zw[std::size_t(i)];
            mprinted += gji * (p - n + 0.5) * (zjzi - r2 * dij) / (2.0 * r4);
            msecond += gji * (n + p - 0.5) * (dij * r2 - zjzi) / r4;
        }
    s.derivative_printed = dprinted;
    s.derived_bracket = derived;
    s.metric_printed = mprinted;
    s.metric_second = msecond;
    s.c1 = -(n - 1.0) * (n - 1.0 + 2.0 * p) / (4.0 * r);
    s.half_R = scalar_curvature_closed(z) / 2.0;
    s.unit_bracket_printed = s.c1 + s.half_R + s.metric_printed;
    s.unit_bracket_theorem = s.c1 + s.half_R + s.metric_second;
    s.unit_bracket_halved = s.c1 + s.half_R + 0.5 * s.metric_second;
    s.printed_bracket = s.derivative_printed + s.product * s.unit_bracket_printed;
    return s;
}

StarAsymptotics star_asymptotics(const PolySymbol& f1, const PolySymbol& f2, const Point& z,
                                 const std::vector<double>& hbar_grid, int n, double p, int L) {
    require_nonzero(z, "star_asymptotics");
    if (hbar_grid.size() < 4) throw ConfigError("star_asymptotics: need >= 4 grid points");
    for (std::size_t i = 1; i < hbar_grid.size(); ++i)
        if (!(hbar_grid[i] < hbar_grid[i - 1])) throw ConfigError("star_asymptotics: grid must decrease");
    const int Lmin = berezin_min_degree(z, hbar_grid.back());
    if (L < 0) L = Lmin;
    if (L < Lmin)
        throw TruncationError("star_asymptotics: L = " + std::to_string(L) +
                              " violates L >= 6|z|/hbar_min = " + std::to_string(Lmin));
    struct Point3 {
        cplx star, product, first;
        double unit;
    };
    const auto rows = parallel_map<Point3>(hbar_grid.size(), [&](std::size_t i) {
        const auto basis = Basis::make({n, p, hbar_grid[i], L});
        const OperatorMatrix A = toeplitz(f1, basis), B = toeplitz(f2, basis);
        const StarFirstOrder t = star_semiclassical_term(A, B, z);
        return Point3{star_operator_route(A, B, z, z), t.product, hbar_grid[i] * t.derived_bracket,
                      t.unit_bracket_printed.real()};
    });
    StarAsymptotics s;
    s.hbar = hbar_grid;
    for (const auto& r : rows) {
        s.star.push_back(r.star);
        s.product.push_back(r.product);
        s.first_order.push_back(r.first);
        s.unit_printed.push_back(r.unit);
    }
    s.deviation.hbar = s.residual.hbar = hbar_grid;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s.deviation.values.push_back(s.star[i]);
        s.deviation.targets.push_back(s.product[i]);
        s.residual.values.push_back(s.star[i] - s.first_order[i]);
        s.residual.targets.push_back(s.product[i]);
    }
    finish_fit(s.deviation);
    finish_fit(s.residual);
    return s;
}

cplx hypergeometric_laplace_value(const Beta& beta, const Point& z, double nu, double mu, const ModelParams& params,
                                  const QuadratureRule& radial, const QuadratureRule& sphere) {
    params.validate();
    require_nonzero(z, "hypergeometric_laplace_value");
    if (!(nu > 0.5) || !(mu > 0.5)) throw DomainError("hypergeometric_laplace_value: nu, mu must exceed 1/2");
    check_cutoff(z, params.hbar, radial, "hypergeometric_laplace_value");
    const double h2 = params.hbar * params.hbar;
    const double rz = cnorm(z);
    const cplx den = hyp0f1(mu, cplx(rz * rz / h2)).value;
    const cplx s = integrate_cn(
        [&](const Point& w) {
            const cplx wz = cdot(w, z) / h2;
            return beta(w) * hyp0f1(nu, wz).value * hyp0f1(mu, std::conj(wz)).value;
        },
        radial, sphere);
    const double lead = std::pow(rz / params.hbar, params.n + params.p - nu) *
                        std::exp(log_gamma(nu) - log_gamma(params.n + params.p));
    return s / den / lead;
}

AsymptoticFit hypergeometric_laplace_check(const Beta& beta, const Point& z, double nu, double mu, int n, double p,
                                           const std::vector<double>& hbar_grid, int radial_nodes,
                                           const std::vector<int>& sphere_orders) {
    if (hbar_grid.size() < 2) throw ConfigError("hypergeometric_laplace_check: need >= 2 grid points");
    const QuadratureRule sphere = build_sphere_rule(n, sphere_orders);
    AsymptoticFit f;
    f.hbar = hbar_grid;
    for (double h : hbar_grid) {
        const ModelParams prm{n, p, h, 0};
        const double R = std::max(40.0, std::ceil(star_min_cutoff(z, h)));
        // Panel width on [1, R] kept at or below 2.5 (16 nodes each).
        const int m = std::max(radial_nodes, 16 * (6 + int(std::ceil((R - 1.0) / 2.5))));
        const QuadratureRule radial = build_radial_rule(prm, R, m);
        f.values.push_back(hypergeometric_laplace_value(beta, z, nu, mu, prm, radial, sphere));
        f.targets.push_back(beta(z));
    }
    finish_fit(f);
    return f;
}

}  // namespace bq
