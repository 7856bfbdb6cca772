#pragma once

#include "berezin/core.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/specfun.hpp"

#include <vector>

namespace bq {

enum class KernelRoute { Series, BesselClosedForm, Asymptotic };

const char* route_name(KernelRoute r);

struct KernelValue {
    cplx value{};
    KernelRoute route = KernelRoute::Series;
    double est_abs_error = 0.0;
};

/// log c_{l,p} = (1/2) log((n)_l / (n+p)_l).
double log_coherent_constant(int l, const ModelParams& params);

/// sum_l c_{l,p}/l! t^l, stopped once |term| < tol |sum| three times in a row.
KernelValue coherent_series(cplx t, const ModelParams& params, double tol = 1e-16);

/// Coherent state K(x, z) at a sphere point x.
KernelValue coherent_eval(const Point& x, const Point& z, const ModelParams& params, double tol = 1e-16);

/// K(., z) truncated at degree L in the phi basis.
CoeffVector coherent_coeffs(const Point& z, const BasisPtr& basis);

/// Bound on |K(x, z) - truncated K(x, z)| over the sphere.
double coherent_truncation_tail(const Point& z, const ModelParams& params);

/// Reproducing kernel T(z, w) of E_{n,p}; Series is the reference route.
KernelValue kernel_T(const Point& z, const Point& w, const ModelParams& params,
                     KernelRoute route = KernelRoute::Series);

/// T as a function of u = z.w/hbar^2 (0F1(n+p; u)).
KernelValue kernel_T_of(cplx u, const ModelParams& params, KernelRoute route = KernelRoute::Series);

/// Bound on the part of T(z, w) carried by degrees above L.
double kernel_truncation_tail(const Point& z, const Point& w, const ModelParams& params);

/// <K(., z), K(., w)> on the sphere, equal to T(w, z).
KernelValue coherent_inner(const Point& z, const Point& w, const ModelParams& params);

/// The same pairing from truncated coefficient vectors.
cplx coherent_inner_truncated(const Point& z, const Point& w, const BasisPtr& basis);

enum class AsymptoticBranch { Principal, TwoExponential };

/// Arguments closer than this to the negative real axis fall back to the series route.
inline constexpr double kCutMargin = 0.1;

/// Large-|w.z|/hbar expansion of <K(., z), K(., w)>; order 0 or 1 in hbar.
KernelValue coherent_inner_asymptotic(const Point& z, const Point& w, const ModelParams& params,
                                      int order, AsymptoticBranch branch = AsymptoticBranch::Principal);

/// Reproducing kernel of O: 2F1(n, 1; 1; x.y) = (1 - x.y)^{-n}.
cplx kernel_H(const Point& x, const Point& y, int n);
/// H(., y) in the phi basis: coefficients conj(phi_k(y)).
CoeffVector kernel_H_coeffs(const Point& y, const BasisPtr& basis);

/// Inverse transform in integral form: int f(z) K(x, z) dm(z).
cplx inverse_transform_integral(const SphereFunction& f, const Point& x, const ModelParams& params,
                                const QuadratureRule& radial, const QuadratureRule& sphere);

/// g(z) = sum_l sqrt(a l + 1) z^l / l!.
EvalResult g_function(cplx z, double a);
/// sqrt(a) z^{1/2} e^z (1 + a1/z + a2/z^2) inside |Im z| <= C Re z.
cplx g_asymptotic(cplx z, double a, double a1 = 0.0, double a2 = 0.0, double cone = 1.0);
/// g(z) / (sqrt(a) z^{1/2} e^z) - 1.
double g_relative_deviation(double z, double a);

struct GCoefficientFit {
    double a = 0.0;
    std::vector<double> window;       // z values
    std::vector<double> raw;          // z (g/leading - 1)
    std::vector<double> richardson;   // 2 raw(2z) - raw(z)
    std::vector<double> a2_estimates; // 2z (raw(z) - raw(2z)) corrected for a1
    double a1 = 0.0;                  // mean of richardson
    double a1_spread = 0.0;           // max |richardson - a1|
    double a2 = 0.0;
    bool stable_3_digits = false;
};

GCoefficientFit fit_g_coefficients(int n, const std::vector<double>& window);

}  // namespace bq
