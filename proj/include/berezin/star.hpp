#pragma once

#include "berezin/calculus.hpp"
#include "berezin/core.hpp"
#include "berezin/fit.hpp"
#include "berezin/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace bq {

/// Metric data of the potential 2|w|. metric(i, j) = g_{i jbar}; inverse(j, i) = g^{jbar i}.
struct KahlerData {
    Point w;
    Eigen::MatrixXcd metric;
    Eigen::MatrixXcd inverse;
    double det = 0.0;
    double scalar_curvature = 0.0;  // finite differences, Richardson-extrapolated
    double curvature_gap = 0.0;     // |R(h) - R(h/2)|
};

Eigen::MatrixXcd kahler_metric(const Point& w);
/// Rank-one inverse r (I + conj(w) w^T / r^2).
Eigen::MatrixXcd kahler_metric_inverse(const Point& w);
KahlerData kahler_data(const Point& w, double h_fd = 1e-3);
/// -n (n - 1) / (2 |w|).
double scalar_curvature_closed(const Point& w);

/// B(AB)(z, w).
cplx star_operator_route(const OperatorMatrix& A, const OperatorMatrix& B, const Point& z, const Point& w);

/// Smallest admissible radial cutoff, in units of hbar.
double star_min_cutoff(const Point& z, double hbar);

/// (1 / T(z, z)) int K_A(z, u) K_B(u, z) dm(u).
cplx star_integral_route(const OperatorMatrix& A, const OperatorMatrix& B, const Point& z,
                         const QuadratureRule& radial, const QuadratureRule& sphere);

/// Symbol of two points: f(u) stands for f1(u, z) or f2(z, u) at fixed z.
using PointFunction = std::function<cplx(const Point&)>;

/// Printed composition integral on the diagonal: prefactor 2/((pi hbar)^n hbar), Lebesgue measure,
/// Bessel-ratio kernel. Evaluated on the dm rule with the density ratio folded in.
cplx star_integral_printed(const PointFunction& f1_uz, const PointFunction& f2_zu, const Point& z,
                           const ModelParams& params, const QuadratureRule& radial, const QuadratureRule& sphere);

/// First-order pieces of f1 * f2 at z. Symbol derivatives by central differences with Richardson.
struct StarFirstOrder {
    cplx product;              // f1(z) f2(z)
    cplx derivative_printed;   // g^{jbar i} [d_i f1(z, w) + d_jbar f2(w, z)] at w = z
    cplx c1;                   // -(n-1)(n-1+2p) / (4|z|)
    double half_R = 0.0;       // R / 2
    cplx metric_printed;       // g^{jbar i} (p - n + 1/2)(z_j conj(z_i) - |z|^2 delta_ij) / (2|z|^4)
    cplx metric_second;        // g^{jbar i} of the second-derivative formula at nu = mu = n + p
    cplx printed_bracket;      // derivative_printed + product (c1 + half_R + metric_printed)
    cplx unit_bracket_printed; // the same bracket at f1 = f2 = 1
    cplx unit_bracket_theorem; // c1 + half_R + metric_second (f1 = f2 = 1 in the expansion theorem)
    cplx unit_bracket_halved;  // c1 + half_R + metric_second / 2, dividing by (xi/g)(z) = 2 |z|^{n+p-nu}
    cplx derived_bracket;      // g^{jbar i} dbar_j f1(w, z) d_i f2(z, w) at w = z
    double fd_gap = 0.0;       // max Richardson gap of the derivatives
};

StarFirstOrder star_semiclassical_term(const OperatorMatrix& A, const OperatorMatrix& B, const Point& z,
                                       double h_fd = 1e-4);

/// Star-product asymptotics over an hbar grid: B(AB)(z) - B(A)(z) B(B)(z), then the
/// residual after the derived first-order term.
struct StarAsymptotics {
    std::vector<double> hbar;
    std::vector<cplx> star;        // operator route
    std::vector<cplx> product;
    std::vector<cplx> first_order; // hbar * derived bracket
    std::vector<double> unit_printed;
    AsymptoticFit deviation;
    AsymptoticFit residual;
};

StarAsymptotics star_asymptotics(const PolySymbol& f1, const PolySymbol& f2, const Point& z,
                                 const std::vector<double>& hbar_grid, int n, double p, int L = -1);

/// xi_z^{nu,mu}(w) / det g(w).
cplx xi_over_g(const Point& z, const Point& w, double nu, double mu, double p);
/// d_i dbar_j (xi/g) at w = z: finite differences and the closed formula. Entry (i, j).
Eigen::MatrixXcd xi_over_g_hessian_fd(const Point& z, double nu, double mu, double p, double h_fd = 1e-3);
Eigen::MatrixXcd xi_over_g_hessian_closed(const Point& z, double nu, double mu, double p);
/// Same Hessian from d dbar log(xi/g) + |d log(xi/g)|^2: the (n+p-nu)(n+p-mu) term carries 1/2.
Eigen::MatrixXcd xi_over_g_hessian_derived(const Point& z, double nu, double mu, double p);

/// Test function of w for the Laplace check.
using Beta = std::function<cplx(const Point&)>;

/// int beta(w) 0F1(nu; w.z/hbar^2) 0F1(mu; z.w/hbar^2) / 0F1(mu; |z|^2/hbar^2) dm(w), divided by
/// (|z|/hbar)^{n+p-nu} Gamma(nu)/Gamma(n+p); targets are beta(z).
AsymptoticFit hypergeometric_laplace_check(const Beta& beta, const Point& z, double nu, double mu, int n, double p,
                                           const std::vector<double>& hbar_grid, int radial_nodes,
                                           const std::vector<int>& sphere_orders);

/// Single-hbar value of the normalized Laplace integral.
cplx hypergeometric_laplace_value(const Beta& beta, const Point& z, double nu, double mu, const ModelParams& params,
                                  const QuadratureRule& radial, const QuadratureRule& sphere);

}  // namespace bq
