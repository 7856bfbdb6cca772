#include "berezin/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bq {

namespace {

using ldouble = long double;
using lcplx = std::complex<long double>;

constexpr ldouble kEpsL = std::numeric_limits<ldouble>::epsilon();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Arg in (-pi, pi], with the negative real axis (either zero sign) at +pi.
double principal_arg(cplx z) {
    if (z.imag() == 0.0 && z.real() < 0.0) return std::numbers::pi;
    return std::arg(z);
}

lcplx principal_pow_l(lcplx z, ldouble a) {
    if (z == lcplx(0)) {
        if (a == 0) return 1;
        if (a > 0) return 0;
        throw DomainError("principal_pow: zero base with negative exponent");
    }
    ldouble arg = (z.imag() == 0 && z.real() < 0) ? std::numbers::pi_v<ldouble> : std::arg(z);
    ldouble logmod = std::log(std::abs(z));
    return std::exp(lcplx(a * logmod, a * arg));
}

ldouble log_gamma_l(ldouble x) {
    int sign = 0;
    return ::lgammal_r(x, &sign);
}

// Ascending series for I_nu.
EvalResult bessel_i_series(double nu, cplx z) {
    if (z == cplx(0)) {
        if (nu == 0.0) return {1.0, 0.0, 1};
        if (nu > 0.0) return {0.0, 0.0, 1};
        throw DomainError("bessel_i: I_nu(0) is infinite for -1 < nu < 0");
    }
    const lcplx half = lcplx(z.real(), z.imag()) / ldouble(2);
    const lcplx q = half * half;
    const ldouble aq = std::abs(q);
    lcplx term = 1, sum = 1;
    ldouble abs_sum = 1;
    unsigned k = 0;
    ldouble tail = 0;
    for (;; ++k) {
        const ldouble denom = ldouble(k + 1) * (ldouble(nu) + k + 1);
        term *= q / denom;
        sum += term;
        abs_sum += std::abs(term);
        const ldouble r = aq / ((ldouble(k + 2)) * (ldouble(nu) + k + 2));
        if (r < 0.5L) {
            tail = std::abs(term) * r / (1 - r);
            if (tail <= kEpsL * std::abs(sum) || tail == 0) break;
        }
        if (k > 100000) break;
    }
    const lcplx lead =
        principal_pow_l(half, nu) / std::exp(log_gamma_l(ldouble(nu) + 1));
    const lcplx value = lead * sum;
    const ldouble scale = std::abs(lead);
    const double err = double(scale * (tail + 4 * kEpsL * abs_sum * std::sqrt(ldouble(k + 2)))) +
                       kEps * double(std::abs(value));
    return {cplx(double(value.real()), double(value.imag())), err, k + 2};
}

struct AsymSum {
    lcplx value;
    ldouble last;
    unsigned terms;
};

// sum_k s^k a_k(nu)/z^k with a_k the Hankel coefficients, truncated at the smallest term.
AsymSum hankel_sum(double nu, lcplx z, int s) {
    const ldouble mu = 4 * ldouble(nu) * nu;
    lcplx term = 1, sum = 1;
    ldouble prev = 1;
    unsigned k = 0;
    for (;; ++k) {
        const ldouble odd = 2 * ldouble(k) + 1;
        lcplx next = term * ldouble(s) * (mu - odd * odd) / (ldouble(k + 1) * 8 * z);
        const ldouble an = std::abs(next);
        if (an == 0) return {sum, 0, k + 1};
        if (an >= prev) return {sum, prev, k + 1};
        term = next;
        sum += term;
        prev = an;
        if (an <= kEpsL * std::abs(sum)) return {sum, an, k + 2};
        if (k > 400) return {sum, an, k + 2};
    }
}

// Large-|z| expansion for Arg z in [0, pi/2]; the recessive exponential is kept
// when it is not negligible (near the imaginary axis).
EvalResult bessel_i_asymptotic_q1(double nu, lcplx z) {
    const lcplx pref = std::sqrt(ldouble(2) * std::numbers::pi_v<ldouble> * z);
    const AsymSum grow = hankel_sum(nu, z, -1);
    lcplx value = std::exp(z) / pref * grow.value;
    ldouble err = std::abs(std::exp(z) / pref) * grow.last;
    unsigned terms = grow.terms;
    if (z.real() < 25) {
        const AsymSum decay = hankel_sum(nu, z, +1);
        const lcplx phase =
            std::exp(lcplx(0, (ldouble(nu) + ldouble(0.5)) * std::numbers::pi_v<ldouble>));
        const lcplx second = std::exp(-z) * phase / pref;
        value += second * decay.value;
        err += std::abs(second) * decay.last;
        terms += decay.terms;
    }
    const double e = double(err) + 8 * kEps * double(std::abs(std::exp(z) / pref));
    return {cplx(double(value.real()), double(value.imag())), e, terms};
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double log_pochhammer(double b, unsigned l) {
    if (!(b > 0.0)) throw DomainError("pochhammer: b must be positive");
    if (l == 0) return 0.0;
    if (l <= 64) {
        long double s = 0;
        for (unsigned j = 0; j < l; ++j) s += std::log(static_cast<long double>(b) + j);
        return double(s);
    }
    return double(log_gamma_l(ldouble(b) + l) - log_gamma_l(ldouble(b)));
}

double pochhammer(double b, unsigned l) { return std::exp(log_pochhammer(b, l)); }

cplx principal_sqrt(cplx z) {
    if (z.imag() == 0.0) {
        if (z.real() >= 0.0) return {std::sqrt(z.real()), 0.0};
        return {0.0, std::sqrt(-z.real())};
    }
    return std::sqrt(z);
}

cplx principal_pow(cplx z, double a) {
    const lcplx r = principal_pow_l(lcplx(z.real(), z.imag()), a);
    return {double(r.real()), double(r.imag())};
}

EvalResult bessel_i(double nu, cplx z, BesselBranch branch) {
    if (!(nu > -1.0)) throw DomainError("bessel_i: order must exceed -1");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("bessel_i: non-finite argument");
    const double az = std::abs(z);

    if (branch == BesselBranch::Series) return bessel_i_series(nu, z);
    if (branch == BesselBranch::Asymptotic) {
        if (az == 0.0 || std::abs(principal_arg(z)) >= std::numbers::pi / 2)
            throw DomainError("bessel_i: asymptotic branch needs |Arg z| < pi/2");
    }
    if (branch == BesselBranch::Auto && az < kBesselCrossover) return bessel_i_series(nu, z);

    // Reduce to the closed first quadrant: I_nu(-zeta) = e^{i pi nu} I_nu(zeta) for
    // Arg z in (0, pi], and I_nu(conj z) = conj I_nu(z).
    lcplx w(z.real(), z.imag());
    lcplx factor = 1;
    if (w.real() < 0) {
        const ldouble s = principal_arg(z) > 0 ? 1 : -1;
        factor = std::exp(lcplx(0, s * ldouble(nu) * std::numbers::pi_v<ldouble>));
        w = -w;
    }
    const bool conj_back = w.imag() < 0;
    if (conj_back) w = std::conj(w);
    EvalResult r = bessel_i_asymptotic_q1(nu, w);
    if (conj_back) r.value = std::conj(r.value);
    const lcplx v = factor * lcplx(r.value.real(), r.value.imag());
    r.value = cplx(double(v.real()), double(v.imag()));
    return r;
}

EvalResult bessel_k(double p, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
    p = std::abs(p);
    const double tpeak = std::asinh(p / x);

    // Trapezoid rule on int_0^inf exp(-x cosh t) cosh(pt) dt with e^{-x} factored out.
    auto trap = [&](double h, unsigned& count) {
        ldouble s = 0.5L;
        ldouble peak = 0.5L;
        count = 1;
        for (unsigned j = 1;; ++j) {
            const double t = j * h;
            const double pt = p * t;
            const double logcosh = pt + std::log1p(std::exp(-2.0 * pt)) - std::numbers::ln2;
            const double e = -x * (std::cosh(t) - 1.0) + logcosh;
            const ldouble term = std::exp(ldouble(e));
            s += term;
            peak = std::max(peak, term);
            ++count;
            if (t > tpeak && term < 1e-22L * s) break;
            if (j > 200000) break;
        }
        return ldouble(h) * s;
    };
    unsigned c1 = 0, c2 = 0;
    const ldouble coarse = trap(0.1, c1);
    const ldouble fine = trap(0.05, c2);
    const ldouble ex = std::exp(-ldouble(x));
    const double value = double(fine * ex);
    const double err = double(std::abs(fine - coarse) * ex) + 4 * kEps * value;
    return {value, err, c2};
}

EvalResult bessel_k_asymptotic(double p, double x, unsigned terms) {
    if (!(x > 0.0)) throw DomainError("bessel_k_asymptotic: argument must be positive");
    const ldouble mu = 4 * ldouble(p) * p;
    ldouble term = 1, sum = 1;
    unsigned used = 1;
    for (unsigned k = 1; k < terms; ++k) {
        const ldouble odd = 2 * ldouble(k) - 1;
        const ldouble next = term * (mu - odd * odd) / (ldouble(k) * 8 * x);
        if (std::abs(next) >= std::abs(term) && k > 1) break;
        term = next;
        sum += term;
        ++used;
        if (term == 0) break;
    }
    const ldouble pref = std::sqrt(std::numbers::pi_v<ldouble> / (2 * ldouble(x))) * std::exp(-ldouble(x));
    return {double(pref * sum), double(std::abs(pref * term)), used};
}

EvalResult hyp0f1_series(double b, cplx z) {
    if (!(b > 0.0)) throw DomainError("hyp0f1: b must be positive");
    const lcplx zl(z.real(), z.imag());
    const ldouble az = std::abs(zl);
    lcplx term = 1, sum = 1;
    ldouble abs_sum = 1, tail = 0;
    unsigned l = 0;
    int small_run = 0;
    for (;; ++l) {
        term *= zl / (ldouble(l + 1) * (ldouble(b) + l));
        sum += term;
        abs_sum += std::abs(term);
        const ldouble r = az / (ldouble(l + 2) * (ldouble(b) + l + 1));
        small_run = std::abs(term) < kEpsL * std::abs(sum) ? small_run + 1 : 0;
        if (r < 0.5L) {
            tail = std::abs(term) * r / (1 - r);
            if (small_run >= 3 || tail == 0) break;
        }
        if (l > 100000) break;
    }
    const double err = double(tail + 4 * kEpsL * abs_sum * std::sqrt(ldouble(l + 2))) +
                       kEps * double(std::abs(sum));
    return {cplx(double(sum.real()), double(sum.imag())), err, l + 2};
}

EvalResult hyp0f1(double b, cplx z) {
    const EvalResult s = hyp0f1_series(b, z);
    if (s.est_abs_error <= 1e-14 * std::abs(s.value)) return s;
    const cplx r = principal_sqrt(z);
    const EvalResult i = bessel_i(b - 1.0, 2.0 * r);
    const cplx pref = std::exp(log_gamma(b)) * principal_pow(z, (1.0 - b) / 2.0);
    const cplx v = pref * i.value;
    return {v, std::abs(pref) * i.est_abs_error + 4 * kEps * std::abs(v), i.terms_used};
}

cplx hyp2f1_geom(unsigned n, cplx t) {
    if (!(std::abs(t) < 1.0)) throw DomainError("hyp2f1_geom: requires |t| < 1");
    return std::pow(cplx(1.0) - t, -double(n));
}

EvalResult hyp2f1_geom_series(unsigned n, cplx t, double tol) {
    const double at = std::abs(t);
    if (!(at < 1.0)) throw DomainError("hyp2f1_geom_series: requires |t| < 1");
    lcplx tl(t.real(), t.imag());
    lcplx term = 1, sum = 1;
    ldouble tail = 0;
    unsigned l = 0;
    for (;; ++l) {
        term *= tl * ldouble(n + l) / ldouble(l + 1);
        sum += term;
        const ldouble r = at * ldouble(n + l + 1) / ldouble(l + 2);
        if (r < 1) {
            tail = std::abs(term) * r / (1 - r);
            if (tail <= tol * std::abs(sum)) break;
        }
        if (l > 10000000) break;
    }
    return {cplx(double(sum.real()), double(sum.imag())), double(tail), l + 2};
}

}  // namespace bq
