#include "berezin/quadrature.hpp"
#include "berezin/hilbert.hpp"
#include "berezin/multiindex.hpp"

#include "doctest.h"

#include <cmath>

using namespace bq;
using doctest::Approx;

TEST_CASE("radial rule moments") {
    for (double p : {-1.0, 0.0, 2.5}) {
        const ModelParams prm{2, p, 1.0, 0};
        const QuadratureRule r = build_radial_rule(prm, 40.0, 256);
        CHECK(r.total_weight() == Approx(1.0).epsilon(1e-12));
        for (int k = 1; k <= 6; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i][0].real(), 2 * k);
            CHECK(s == Approx(radial_moment_closed(prm, k)).epsilon(1e-10));
        }
    }
    CHECK(radial_moment_closed({2, 0.0, 1.0, 0}, 1) == Approx(4.0));
}

TEST_CASE("radial rule error shrinks with more nodes") {
    const ModelParams prm{3, 1.0, 0.5, 0};
    auto err = [&](int m) {
        const QuadratureRule r = build_radial_rule_unchecked(prm, 40.0, m);
        double e = 0;
        for (int k = 0; k <= 6; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i][0].real(), 2 * k);
            e = std::max(e, std::abs(s / radial_moment_closed(prm, k) - 1.0));
        }
        return e;
    };
    CHECK(err(64) < 0.5 * err(32));
    CHECK(err(128) < 0.5 * err(64));
}

TEST_CASE("sphere rule") {
    const QuadratureRule s = build_sphere_rule(2, sphere_orders_for_degree(2, 8));
    CHECK(s.total_weight() == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(integrate_sphere([](const Point& x) { return cplx(std::norm(x[0])); }, s) - 0.5) < 1e-15);
    CHECK(std::abs(integrate_sphere([](const Point& x) { return x[0] * std::conj(x[1]); }, s)) < 1e-16);
    CHECK(sphere_rule_exact_degree(2, sphere_orders_for_degree(2, 8)) >= 8);
    CHECK_THROWS_AS(build_sphere_rule_checked(2, {2, 3}, 8), ConfigError);
}

TEST_CASE("integration over C^n") {
    const ModelParams prm{2, 0.0, 1.0, 4};
    const auto basis = Basis::make(prm);
    const QuadratureRule r = build_radial_rule(prm, 40.0, 256);
    const QuadratureRule s = build_sphere_rule(2, sphere_orders_for_degree(2, 8));
    const CoeffVector a = CoeffVector::delta(basis, Side::HoloBasis, MultiIndex{1, 0});
    const CoeffVector b = CoeffVector::delta(basis, Side::HoloBasis, MultiIndex{0, 1});
    CHECK(std::abs(integrate_cn([](const Point&) { return cplx(1); }, r, s) - 1.0) < 1e-12);
    CHECK(std::abs(integrate_cn([&](const Point& z) { return std::norm(eval_holo(a, z)); }, r, s) - 1.0) < 1e-6);
    CHECK(std::abs(integrate_cn([&](const Point& z) { return eval_holo(a, z) * std::conj(eval_holo(b, z)); }, r, s)) <
          1e-8);
}

TEST_CASE("Monte Carlo on the sphere") {
    const auto one = mc_sphere([](const Point&) { return cplx(1); }, 2, 1000, 5);
    CHECK(one.mean == cplx(1));
    CHECK(one.stderr_ == 0.0);
    auto f = [](const Point& x) { return cplx(std::norm(x[0])); };
    const auto a = mc_sphere(f, 2, 1000000, 7), b = mc_sphere(f, 2, 1000000, 7);
    CHECK(a.mean == b.mean);
    CHECK(std::abs(a.mean - 0.5) < 5 * a.stderr_);
}
