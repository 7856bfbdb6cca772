#pragma once

#include "berezin/core.hpp"

namespace bq {

/// Value with an absolute error estimate and the number of terms summed.
struct EvalResult {
    cplx value{};
    double est_abs_error = 0.0;
    unsigned terms_used = 1;
};

/// |z| at and above which I_nu switches to the large-argument expansion.
inline constexpr double kBesselCrossover = 30.0;

enum class BesselBranch { Auto, Series, Asymptotic };

double log_gamma(double x);
double log_pochhammer(double b, unsigned l);
double pochhammer(double b, unsigned l);

/// Modified Bessel function of the first kind, principal branch.
EvalResult bessel_i(double nu, cplx z, BesselBranch branch = BesselBranch::Auto);

/// MacDonald function K_p(x) for x > 0 from its integral representation.
EvalResult bessel_k(double p, double x);

/// Leading large-x expansion of K_p(x) (Abramowitz-Stegun 9.7.2).
EvalResult bessel_k_asymptotic(double p, double x, unsigned terms = 8);

/// 0F1(;b;z) by its power series. Cancels badly for large |z| off the positive axis.
EvalResult hyp0f1_series(double b, cplx z);

/// 0F1(;b;z): the series while its rounding estimate stays below 1e-14 relative,
/// else Gamma(b) z^{(1-b)/2} I_{b-1}(2 sqrt z) on the principal branch.
EvalResult hyp0f1(double b, cplx z);

/// 2F1(n,1;1;t) = (1-t)^{-n}.
cplx hyp2f1_geom(unsigned n, cplx t);

/// 2F1(n,1;1;t) summed as a power series until the tail drops below tol.
EvalResult hyp2f1_geom_series(unsigned n, cplx t, double tol = 1e-16);

/// Square root with Arg in (-pi/2, pi/2]; negative reals map to +i sqrt|z|.
cplx principal_sqrt(cplx z);

/// z^a on the principal branch with Arg z in (-pi, pi].
cplx principal_pow(cplx z, double a);

}  // namespace bq
