#include "berezin/hilbert.hpp"
#include "berezin/kernels.hpp"
#include "berezin/quadrature.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

using namespace bq;
using doctest::Approx;

TEST_CASE("norm constants") {
    CHECK(phi_norm_const(MultiIndex{0, 0}, 2) == Approx(1.0));
    CHECK(phi_norm_const(MultiIndex{1, 0}, 2) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(phi_norm_const(MultiIndex{1, 1, 0}, 3) == Approx(std::sqrt(12.0)).epsilon(1e-15));
    CHECK(cap_phi_norm_const(MultiIndex{0, 0}, {2, 0.0, 1.0, 0}) == Approx(1.0));
    CHECK(cap_phi_norm_const(MultiIndex{1, 0}, {2, 0.0, 1.0, 0}) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(cap_phi_norm_const(MultiIndex{2, 0}, {2, 0.0, 0.5, 0}) == Approx(4.0 / std::sqrt(12.0)).epsilon(1e-15));
}

TEST_CASE("evaluation") {
    const ModelParams prm{2, 0.0, 0.5, 4};
    const auto basis = Basis::make(prm);
    Point x(2);
    x << 1.0, 0.0;
    CHECK(eval_sphere(CoeffVector::delta(basis, Side::SphereBasis, MultiIndex{0, 0}), x) == cplx(1.0));
    CHECK(std::abs(eval_sphere(CoeffVector::delta(basis, Side::SphereBasis, MultiIndex{1, 0}), x) - std::sqrt(2.0)) <
          1e-15);
    CHECK(eval_holo(CoeffVector::delta(basis, Side::HoloBasis, MultiIndex{0, 0}), x) == cplx(1.0));
    Point zh(2);
    zh << prm.hbar, 0.0;
    CHECK(std::abs(eval_holo(CoeffVector::delta(basis, Side::HoloBasis, MultiIndex{1, 0}), zh) - 1.0 / std::sqrt(2.0)) <
          1e-15);
    CHECK_THROWS_AS(eval_sphere(CoeffVector::zero(basis, Side::SphereBasis), 2.0 * x), DomainError);
}

TEST_CASE("U is unitary on coefficients") {
    const auto basis = Basis::make({2, 1.0, 0.7, 6});
    std::mt19937_64 g(3);
    std::normal_distribution<double> N;
    for (int t = 0; t < 100; ++t) {
        CoeffVector u = CoeffVector::zero(basis, Side::SphereBasis);
        for (Eigen::Index i = 0; i < u.coeffs.size(); ++i) u.coeffs[i] = {N(g), N(g)};
        const CoeffVector v = transform_U(u);
        CHECK(v.side == Side::HoloBasis);
        CHECK(norm(v) == norm(u));
        CHECK(transform_U_inverse(v).coeffs == u.coeffs);
    }
    const CoeffVector z = CoeffVector::zero(basis, Side::SphereBasis);
    CHECK(norm(transform_U(z)) == 0.0);
    const CoeffVector a = CoeffVector::delta(basis, Side::SphereBasis, MultiIndex{1, 0});
    const CoeffVector b = CoeffVector::delta(basis, Side::SphereBasis, MultiIndex{0, 1});
    CHECK(inner_product(a, a) == cplx(1.0));
    CHECK(inner_product(a, b) == cplx(0.0));
    CHECK_THROWS_AS(inner_product(a, transform_U(b)), DomainError);
}

TEST_CASE("quadrature inner product on E") {
    const ModelParams prm{2, 0.0, 1.0, 4};
    const auto basis = Basis::make(prm);
    std::mt19937_64 g(9);
    std::normal_distribution<double> N;
    CoeffVector u = CoeffVector::zero(basis, Side::HoloBasis), v = u;
    for (Eigen::Index i = 0; i < u.coeffs.size(); ++i) {
        u.coeffs[i] = {N(g), N(g)};
        v.coeffs[i] = {N(g), N(g)};
    }
    const QuadratureRule r = build_radial_rule(prm, 40.0, 256);
    const QuadratureRule s = build_sphere_rule(2, sphere_orders_for_degree(2, 8));
    const cplx q = integrate_cn([&](const Point& z) { return eval_holo(u, z) * std::conj(eval_holo(v, z)); }, r, s);
    CHECK(std::abs(q - inner_product(u, v)) < 1e-3);
}

TEST_CASE("reproducing property on E") {
    const ModelParams prm{2, 0.0, 1.0, 8};
    const auto basis = Basis::make(prm);
    const CoeffVector v = CoeffVector::delta(basis, Side::HoloBasis, MultiIndex{1, 1});
    Point z(2);
    z << cplx(0.4, 0.2), cplx(-0.3, 0.5);
    const QuadratureRule r = build_radial_rule(prm, 40.0, 256);
    const QuadratureRule s = build_sphere_rule(2, sphere_orders_for_degree(2, 16));
    const cplx q = integrate_cn(
        [&](const Point& w) { return eval_holo(v, w) * kernel_T(z, w, prm).value; }, r, s);
    CHECK(std::abs(q - eval_holo(v, z)) < 1e-3);
}

TEST_CASE("coefficient CSV round trip") {
    const auto basis = Basis::make({3, 0.5, 1.0, 3});
    CoeffVector u = CoeffVector::zero(basis, Side::HoloBasis);
    for (Eigen::Index i = 0; i < u.coeffs.size(); ++i) u.coeffs[i] = {0.1 * double(i), 1.0 / (1.0 + double(i))};
    std::stringstream ss;
    write_csv(u, ss);
    const CoeffVector back = read_csv(ss, basis, Side::HoloBasis);
    CHECK(back.coeffs == u.coeffs);
}
