#include "berezin/star.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace bq;
using doctest::Approx;

namespace {

Point pt(cplx a, cplx b) {
    Point z(2);
    z << a, b;
    return z;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Kaehler data of 2|w|") {
    const KahlerData k = kahler_data(pt(1, 0));
    CHECK(k.det == Approx(0.5).epsilon(1e-15));
    std::mt19937_64 g(2);
    std::normal_distribution<double> N;
    for (int n : {2, 3}) {
        Point w(n);
        for (int i = 0; i < n; ++i) w[i] = {N(g), N(g)};
        const KahlerData d = kahler_data(w);
        CHECK((d.metric * d.inverse - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(d.scalar_curvature == Approx(scalar_curvature_closed(w)).epsilon(1e-6));
    }
    // Degree -1 metric: R halves when |w| doubles.
    const double r1 = kahler_data(pt(1, 0)).scalar_curvature, r2 = kahler_data(pt(2, 0)).scalar_curvature;
    CHECK(r1 / r2 == Approx(2.0).epsilon(1e-6));
    CHECK(scalar_curvature_closed(pt(1, 0)) == Approx(-1.0));
}

TEST_CASE("operator route laws") {
    const ModelParams prm{2, 0.0, 0.5, 12};
    const auto basis = Basis::make(prm);
    const MultiIndex e1{1, 0}, o{0, 0};
    const OperatorMatrix I = OperatorMatrix::identity(basis);
    const OperatorMatrix T = toeplitz(PolySymbol::monomial(e1, e1), basis);
    const OperatorMatrix X = toeplitz(PolySymbol::monomial(e1, o), basis);
    const Point z = pt(1, 0), w = pt({0.3, 0.2}, {0.1, -0.4});
    CHECK(std::abs(star_operator_route(T, I, z, w) - berezin_symbol(T, z, w)) < 1e-12);
    CHECK(std::abs(star_operator_route(I, I, z, w) - 1.0) < 1e-12);
    CHECK(rel(berezin_symbol((T * X) * X.adjoint(), z, w), berezin_symbol(T * (X * X.adjoint()), z, w)) < 1e-12);
    const cplx c(1.5, -0.5);
    CHECK(rel(star_operator_route(c * T + X, X, z, w),
              c * star_operator_route(T, X, z, w) + star_operator_route(X, X, z, w)) < 1e-12);
}

TEST_CASE("integral route") {
    const ModelParams prm{2, 0.0, 1.0, 6};
    const auto basis = Basis::make(prm);
    const MultiIndex e1{1, 0};
    const OperatorMatrix I = OperatorMatrix::identity(basis);
    const OperatorMatrix T = toeplitz(PolySymbol::monomial(e1, e1), basis);
    const Point z = pt(1, 0);
    const QuadratureRule s = build_sphere_rule(2, sphere_orders_for_degree(2, 16));
    CHECK_THROWS_AS(star_integral_route(T, T, z, build_radial_rule_unchecked(prm, 12.0, 256), s), ConfigError);
    const QuadratureRule r = build_radial_rule(prm, 40.0, 256);
    CHECK(std::abs(star_integral_route(I, I, z, r, s) - 1.0) < 1e-6);
    CHECK(rel(star_integral_route(T, I, z, r, s), berezin_symbol(T, z, z)) < 0.02);
    CHECK(rel(star_integral_route(T, T, z, r, s), star_operator_route(T, T, z, z)) < 0.02);
    const cplx one = star_integral_printed([](const Point&) { return cplx(1); }, [](const Point&) { return cplx(1); },
                                           z, prm, r, s);
    CHECK(std::abs(one - 1.0) < 1e-6);
}

TEST_CASE("first-order term") {
    const Point z = pt(0.8, 0.6);
    const MultiIndex e1{1, 0}, o{0, 0};
    double prev = 1;
    for (double h : {0.2, 0.1, 0.05}) {
        const ModelParams prm{2, 0.0, h, berezin_min_degree(z, 0.05)};
        const auto basis = Basis::make(prm);
        const OperatorMatrix A = toeplitz(PolySymbol::monomial(o, e1), basis);
        const OperatorMatrix B = toeplitz(PolySymbol::monomial(e1, o), basis);
        const StarFirstOrder f = star_semiclassical_term(A, B, z);
        const cplx star = star_operator_route(A, B, z, z);
        const double r = std::abs(star - f.product - h * f.derived_bracket);
        CHECK(r < prev / 3.0);
        prev = r;
        CHECK(std::abs(f.unit_bracket_printed) < 1e-10);
        CHECK(f.unit_bracket_theorem.real() == Approx(0.75).epsilon(1e-6));
        CHECK(std::abs(f.unit_bracket_halved) < 1e-6);
    }
}

TEST_CASE("second derivative of xi/g") {
    const Point z = pt({0.7, 0.1}, {0.5, 0.4});
    for (auto [nu, mu] : {std::pair{2.0, 2.0}, std::pair{1.5, 2.5}, std::pair{3.0, 1.2}}) {
        const Eigen::MatrixXcd fd = xi_over_g_hessian_fd(z, nu, mu, 0.0);
        CHECK((fd - xi_over_g_hessian_derived(z, nu, mu, 0.0)).cwiseAbs().maxCoeff() < 1e-6 * fd.cwiseAbs().maxCoeff());
    }
    // The closed form as printed holds only when (n+p-nu)(n+p-mu) = 0.
    const Eigen::MatrixXcd same = xi_over_g_hessian_fd(z, 2.0, 2.7, 0.0);
    CHECK((same - xi_over_g_hessian_closed(z, 2.0, 2.7, 0.0)).cwiseAbs().maxCoeff() < 1e-6 * same.cwiseAbs().maxCoeff());
    const Eigen::MatrixXcd split = xi_over_g_hessian_fd(z, 1.5, 2.5, 0.0);
    CHECK((split - xi_over_g_hessian_closed(z, 1.5, 2.5, 0.0)).cwiseAbs().maxCoeff() > 1e-2 * split.cwiseAbs().maxCoeff());
}

TEST_CASE("hypergeometric Laplace integral") {
    const Point z = pt(1, 0);
    const auto one = hypergeometric_laplace_check([](const Point&) { return cplx(1); }, z, 2.0, 2.0, 2, 0.0,
                                                  {0.2, 0.1}, 256, {16, 24, 1});
    CHECK(std::abs(one.values[0] - 1.0) < 1e-6);
    CHECK(std::abs(one.values[1] - 1.0) < 1e-6);
    const auto b = hypergeometric_laplace_check([](const Point& w) { return cplx(std::norm(w[0])); }, z, 2.0, 2.0, 2,
                                                0.0, {0.2, 0.1}, 256, {16, 24, 1});
    CHECK(b.errors[1] == Approx(b.errors[0] / 2.0).epsilon(0.1));
}
