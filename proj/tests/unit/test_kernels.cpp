#include "berezin/kernels.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace bq;
using doctest::Approx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

Point pt(cplx a, cplx b) {
    Point z(2);
    z << a, b;
    return z;
}

}  // namespace

TEST_CASE("coherent states") {
    const ModelParams p0{2, 0.0, 0.8, 0};
    const Point x = pt(0.6, cplx(0, 0.8)), z = pt(cplx(0.3, -0.2), 0.5);
    CHECK(coherent_eval(x, Point::Zero(2), p0).value == cplx(1.0));
    CHECK(rel(coherent_eval(x, z, p0).value, std::exp(cdot(x, z) / 0.8)) < 1e-14);
    // 60-term oracle: sum sqrt((2)_l/(3)_l)/l!.
    CHECK(rel(coherent_eval(pt(1, 0), pt(1, 0), {2, 1.0, 1.0, 0}).value, 2.3047702090311548566) < 1e-14);

    const ModelParams p12{2, 0.0, 1.0, 12};
    const auto basis = Basis::make(p12);
    CHECK(std::abs(eval_sphere(coherent_coeffs(pt(1, 0), basis), pt(1, 0)) - std::exp(1.0)) < 1e-9);
    const CoeffVector c0 = coherent_coeffs(Point::Zero(2), basis);
    CHECK(c0.coeffs[0] == cplx(1.0));
    CHECK(c0.coeffs.tail(c0.coeffs.size() - 1).norm() == 0.0);
}

TEST_CASE("U maps coherent states to the kernel") {
    const ModelParams prm{2, 1.0, 0.6, 40};
    const auto basis = Basis::make(prm);
    const Point z = pt(cplx(0.5, 0.1), cplx(-0.2, 0.4)), w = pt(cplx(0.3, 0.3), 0.2);
    const cplx got = eval_holo(transform_U(coherent_coeffs(z, basis)), w);
    const cplx want = kernel_T(w, z, prm).value;
    CHECK(std::abs(got - want) <= kernel_truncation_tail(w, z, prm) + 1e-14 * std::abs(want));
}

TEST_CASE("kernel T") {
    const ModelParams p0{2, 0.0, 1.0, 0};
    CHECK(kernel_T(pt(1, 0), pt(0, 1), p0).value == cplx(1.0));
    CHECK(rel(kernel_T(pt(1, 0), pt(1, 0), p0).value, 1.590636854637329063382254425) < 1e-15);
    // 0F1(3.5; z.w / 0.09) at n = 3, p = 0.5, hbar = 0.3.
    Point z(3), w(3);
    z << cplx(-0.5, 0.3), cplx(1.1, -0.4), 0.0;
    w << cplx(0.2, -0.7), 0.6, cplx(0.9, 0.9);
    const ModelParams p3{3, 0.5, 0.3, 0};
    CHECK(rel(kernel_T(z, w, p3).value, {0.71061662116215340828, -3.0901340912706747249}) < 1e-12);
    CHECK(rel(kernel_T(z, w, p3, KernelRoute::BesselClosedForm).value, {0.71061662116215340828, -3.0901340912706747249}) <
          1e-12);
    CHECK(rel(kernel_T(z, w, p3).value, std::conj(kernel_T(w, z, p3).value)) < 1e-15);
    CHECK(rel(kernel_T_of(100.0 * std::polar(1.0, 3 * std::numbers::pi / 4), {3, -0.5, 1.0, 0}).value,
              {-6.9549711436881195431, -3.4501065600583362854}) < 1e-11);
}

TEST_CASE("series and Bessel routes agree on the grid") {
    for (int n : {2, 3})
        for (double p : {-1.0, -0.5, 0.0, 1.0, 2.5})
            for (double m : {0.1, 1.0, 16.0, 64.0, 100.0})
                for (int q = -3; q <= 3; ++q) {
                    const cplx u = std::polar(m, q * std::numbers::pi / 4);
                    const ModelParams prm{n, p, 1.0, 0};
                    CHECK(rel(kernel_T_of(u, prm).value, kernel_T_of(u, prm, KernelRoute::BesselClosedForm).value) <
                          1e-10);
                }
}

TEST_CASE("coherent inner product") {
    const ModelParams prm{2, 0.0, 0.2, 0};
    CHECK(coherent_inner(Point::Zero(2), Point::Zero(2), prm).value == cplx(1.0));
    CHECK(rel(coherent_inner(pt(1, 0), pt(1, 0), prm).value, 534.19766074025093087) < 1e-14);
    const auto basis = Basis::make({2, 0.0, 0.2, 80});
    CHECK(rel(coherent_inner_truncated(pt(1, 0), pt(1, 0), basis), 534.19766074025093087) < 1e-13);
}

TEST_CASE("two-term asymptotic") {
    // n = 2, p = 0: correction -3/16 per unit hbar / sqrt(w.z).
    const ModelParams prm{2, 0.0, 0.05, 0};
    const Point z = pt(1, 0);
    const cplx a0 = coherent_inner_asymptotic(z, z, prm, 0).value;
    const cplx a1 = coherent_inner_asymptotic(z, z, prm, 1).value;
    CHECK((a1 / a0).real() == Approx(1.0 - 3.0 / 16.0 * 0.05).epsilon(1e-14));
    double prev = 1;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
        const ModelParams q{2, 1.0, h, 0};
        const double r = std::abs(coherent_inner_asymptotic(z, z, q, 1).value / coherent_inner(z, z, q).value - 1.0);
        CHECK(r < prev / 3.0);
        prev = r;
    }
}

TEST_CASE("sphere kernel H") {
    const Point x = pt(1, 0), y = pt(0.5, std::sqrt(0.75));
    CHECK(kernel_H(x, pt(0, 1), 2) == cplx(1.0));
    CHECK(std::abs(kernel_H(x, y, 2) - 4.0) < 1e-14);
    // U H(., y) (z) = sum_l c_l (z.y / hbar)^l / l!.
    const ModelParams prm{2, 1.5, 0.7, 8};
    const auto basis = Basis::make(prm);
    const Point yy = pt(cplx(0.3, 0.0), cplx(0.0, std::sqrt(0.91))), z = pt(cplx(0.05, 0.025), cplx(-0.025, 0.075));
    const cplx got = eval_holo(transform_U(kernel_H_coeffs(yy, basis)), z);
    CHECK(std::abs(got - coherent_series(cdot(z, yy) / prm.hbar, prm).value) < 1e-10);
    CHECK(std::abs(eval_sphere(kernel_H_coeffs(yy, basis), x) - kernel_H(x, yy, 2)) < 1e-3);
}

TEST_CASE("g function") {
    CHECK(g_function(0.0, 1.0).value == cplx(1.0));
    CHECK(rel(g_function({3, -2}, 1.0).value, {-25.74881848059770383, -32.554983570232749942}) < 1e-14);
    CHECK(rel(g_function(10.0, 0.5).value, 53473.593843504826675) < 1e-14);
    double prev = 1;
    for (double z : {20.0, 50.0, 100.0}) {
        const double d = std::abs(g_relative_deviation(z, 1.0));
        CHECK(d < prev);
        prev = d;
    }
    const auto f = fit_g_coefficients(2, {40.0, 60.0, 100.0});
    CHECK(f.stable_3_digits);
    CHECK_THROWS_AS(g_asymptotic({1.0, 3.0}, 1.0), DomainError);
}
