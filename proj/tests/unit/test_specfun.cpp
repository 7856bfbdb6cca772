#include "berezin/specfun.hpp"

#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>

using namespace bq;
using doctest::Approx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("log_gamma and pochhammer") {
    CHECK(log_gamma(1.0) == Approx(0.0));
    CHECK(log_gamma(5.0) == Approx(std::log(24.0)).epsilon(1e-15));
    CHECK(std::abs(log_gamma(0.5) - 0.57236494292470008707) < 1e-15);
    CHECK(std::abs(log_gamma(7.3) - 7.1478925230222490328) < 1e-14);
    CHECK(pochhammer(3.7, 0) == 1.0);
    CHECK(pochhammer(2.0, 3) == Approx(24.0).epsilon(1e-15));
    CHECK(pochhammer(2.0, 10) == Approx(39916800.0).epsilon(1e-15));
    CHECK(std::exp(log_pochhammer(2.5, 150)) / std::exp(log_pochhammer(2.5, 149)) == Approx(151.5).epsilon(1e-12));
}

TEST_CASE("I_0(2) against an exact rational series") {
    using boost::multiprecision::cpp_rational;
    cpp_rational sum = 0, term = 1;
    for (int k = 0; k < 50; ++k) {
        sum += term;
        term /= cpp_rational((k + 1) * (k + 1));
    }
    const double oracle = static_cast<double>(sum);
    CHECK(std::abs(bessel_i(0.0, 2.0).value.real() - oracle) < 1e-15);
    CHECK(std::abs(hyp0f1(1.0, 1.0).value.real() - oracle) < 1e-15);
}

TEST_CASE("bessel_i frozen values") {
    CHECK(bessel_i(0.0, 0.0).value == cplx(1.0));
    CHECK(bessel_i(1.0, 0.0).value == cplx(0.0));
    CHECK(rel(bessel_i(2.5, {3, 4}).value, {-1.5053769008444608791, -2.0551636148855218865}) < 1e-13);
    CHECK(rel(bessel_i(0.5, {25, -10}).value, {-5130720821.9911784183, 2078895017.0522595519}) < 1e-13);
    CHECK(rel(bessel_i(1.0, 40.0).value, 14707396163259352.739) < 1e-14);
    CHECK(rel(bessel_i(0.0, {0, 0.3}).value, 0.97762624653829608922) < 1e-15);
}

TEST_CASE("bessel_i branches agree at the crossover") {
    for (double nu : {0.0, 0.5, 1.0, 2.5, 7.0})
        for (double a : {0.0, 0.5, 1.0, 1.4}) {
            const cplx z = std::polar(30.0, a);
            const auto s = bessel_i(nu, z, BesselBranch::Series);
            const auto t = bessel_i(nu, z, BesselBranch::Asymptotic);
            CHECK(std::abs(s.value - t.value) <= s.est_abs_error + t.est_abs_error + 1e-12 * std::abs(s.value));
        }
}

TEST_CASE("bessel_k") {
    const double pi = std::numbers::pi;
    CHECK(bessel_k(0.5, 1.0).value.real() == Approx(std::sqrt(pi / 2.0) * std::exp(-1.0)).epsilon(1e-13));
    CHECK(bessel_k(0.5, 3.0).value.real() == Approx(std::sqrt(pi / 6.0) * std::exp(-3.0)).epsilon(1e-13));
    CHECK(bessel_k(-1.3, 2.7).value.real() == Approx(bessel_k(1.3, 2.7).value.real()).epsilon(1e-15));
    CHECK(rel(bessel_k(1.3, 2.7).value, 0.064360408999714005066) < 1e-12);
    CHECK(rel(bessel_k(2.5, 45.0).value, 5.7125956898985245775e-21) < 1e-12);
    CHECK(rel(bessel_k_asymptotic(2.5, 45.0).value, 5.7125956898985245775e-21) < 1e-10);
}

TEST_CASE("hyp0f1") {
    CHECK(hyp0f1(2.0, 0.0).value == cplx(1.0));
    CHECK(rel(hyp0f1(3.0, -4.0).value, 0.18206407292603640211) < 1e-14);
    CHECK(rel(hyp0f1(2.5, {-30, 5}).value, {-0.0072284987912187325355, 0.02454638947727357975}) < 1e-11);
    const double pi = std::numbers::pi;
    CHECK(rel(hyp0f1(2.5, 100.0 * std::polar(1.0, 3 * pi / 4)).value, {-6.9549711436881195431, -3.4501065600583362854}) <
          1e-11);
    // Principal-branch Bessel form at a negative argument.
    const cplx z = -4.0, s = principal_sqrt(z);
    CHECK(rel(hyp0f1(3.0, z).value, 2.0 * principal_pow(s, -2.0) * bessel_i(2.0, 2.0 * s).value) < 1e-13);
}

TEST_CASE("geometric 2F1") {
    CHECK(hyp2f1_geom(2, 0.0) == cplx(1.0));
    CHECK(std::abs(hyp2f1_geom(2, 0.5) - 4.0) < 1e-14);
    CHECK(std::abs(hyp2f1_geom(3, 0.25) - 1.0 / (0.75 * 0.75 * 0.75)) < 1e-14);
    CHECK(std::abs(hyp2f1_geom_series(2, 0.5).value - 4.0) < 1e-12);
    CHECK(std::abs(hyp2f1_geom_series(3, {0.1, 0.3}).value - hyp2f1_geom(3, {0.1, 0.3})) < 1e-13);
}

TEST_CASE("principal branch helpers") {
    const double pi = std::numbers::pi;
    CHECK(principal_sqrt(4.0) == cplx(2.0));
    CHECK(std::abs(principal_sqrt(cplx(-1.0, 0.0)) - cplx(0, 1)) < 1e-16);
    CHECK(std::abs(principal_sqrt(cplx(0, 1)) - std::polar(1.0, pi / 4)) < 1e-15);
    CHECK(std::abs(principal_pow(cplx(-8.0, 0.0), 1.0 / 3.0) - std::polar(2.0, pi / 3)) < 1e-15);
}

TEST_CASE("hyp0f1 far from the origin") {
    const double pi = std::numbers::pi;
    CHECK(rel(hyp0f1(1.0, -900.0).value, -0.091471804089061869531) < 1e-12);
    CHECK(rel(hyp0f1(1.0, std::polar(900.0, -2 * pi / 3)).value, {214640178905.8481375, -507427593167.05227257}) < 1e-12);
    CHECK(rel(hyp0f1(3.5, std::polar(2500.0, 1.9 * pi)).value, {-4.9265771975226850764e+37, -2.8932950673745177892e+37}) <
          1e-12);
    CHECK(rel(hyp0f1(1.5, -2500.0).value, -0.0050636564110975879366) < 1e-12);
    CHECK(rel(hyp0f1(3.5, {0.0, -1600.0}).value, {-35476600871311469417.0, 38949269361602683358.0}) < 1e-12);
    // The plain series knows it has lost the digits.
    const auto s = hyp0f1_series(1.0, -900.0);
    CHECK(s.est_abs_error > 1e-6 * std::abs(s.value));
}

TEST_CASE("0F1 and I_nu agree out to |z| = 100") {
    const double pi = std::numbers::pi;
    for (double nu : {0.0, 0.5, 1.0, 2.5})
        for (double r : {0.5, 7.0, 29.0, 31.0, 60.0, 100.0})
            for (double a : {-0.9 * pi, -pi / 3, 0.0, 0.4, pi / 2, 0.95 * pi}) {
                const cplx z = std::polar(r, a);
                const cplx lhs = hyp0f1(nu + 1.0, z * z / 4.0).value;
                const cplx rhs = std::exp(log_gamma(nu + 1.0)) * principal_pow(z / 2.0, -nu) * bessel_i(nu, z).value;
                CHECK(rel(lhs, rhs) < 1e-10);
            }
}

TEST_CASE("bessel_k is positive and decreasing") {
    for (double p : {0.0, 0.3, 1.0, 2.5, 6.0}) {
        double prev = INFINITY;
        for (double x : {0.05, 0.2, 1.0, 3.0, 10.0, 40.0, 120.0}) {
            const double k = bessel_k(p, x).value.real();
            CHECK(k > 0.0);
            CHECK(k < prev);
            prev = k;
        }
    }
}
