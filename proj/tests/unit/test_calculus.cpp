#include "berezin/calculus.hpp"
#include "berezin/kernels.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/specfun.hpp"

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

TEST_CASE("Toeplitz entries") {
    const auto basis = Basis::make({2, 0.0, 1.0, 4});
    const MultiIndex o{0, 0}, e1{1, 0};
    const OperatorMatrix I = toeplitz_monomial(o, o, basis);
    CHECK((I - OperatorMatrix::identity(basis)).hermitian_defect() == 0.0);
    CHECK(std::abs(Eigen::MatrixXcd(I.entries() - OperatorMatrix::identity(basis).entries()).cwiseAbs().maxCoeff()) <
          1e-15);
    const OperatorMatrix X = toeplitz_monomial(e1, o, basis);
    const auto& idx = basis->index();
    CHECK(std::abs(X.entry(idx.position(e1), idx.position(o)) - 1.0 / std::sqrt(2.0)) < 1e-15);
    const OperatorMatrix T = toeplitz_monomial(e1, e1, basis);
    CHECK(T.hermitian_defect() < 1e-15);
    for (int k = 0; k < T.entries().outerSize(); ++k)
        for (OperatorMatrix::Sparse::InnerIterator it(T.entries(), k); it; ++it)
            CHECK(idx[std::size_t(it.row())].degree() == idx[std::size_t(it.col())].degree());
}

TEST_CASE("symbol calculus rules") {
    const auto basis = Basis::make({2, 0.5, 0.8, 8});
    std::mt19937_64 g(21);
    std::normal_distribution<double> N;
    const auto d = Eigen::Index(basis->size());
    Eigen::MatrixXcd M(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) M(i, j) = {N(g), N(g)};
    const OperatorMatrix A(basis, OperatorMatrix::Sparse(M.sparseView()));
    const OperatorMatrix B = toeplitz(PolySymbol::monomial(MultiIndex{1, 0}, MultiIndex{0, 1}), basis);
    const OperatorMatrix I = OperatorMatrix::identity(basis);
    const cplx c(0.4, 2.0);
    for (int t = 0; t < 10; ++t) {
        const Point z = pt({0.5 * N(g), 0.5 * N(g)}, {0.5 * N(g), 0.5 * N(g)});
        const Point w = pt({0.5 * N(g), 0.5 * N(g)}, {0.5 * N(g), 0.5 * N(g)});
        CHECK(std::abs(berezin_symbol(I, z, w) - 1.0) < 1e-12);
        CHECK(rel(berezin_symbol(A.adjoint(), z, w), std::conj(berezin_symbol(A, w, z))) < 1e-10);
        CHECK(rel(berezin_symbol(A + c * B, z, w), berezin_symbol(A, z, w) + c * berezin_symbol(B, z, w)) < 1e-12);
    }
}

TEST_CASE("Schwartz kernel") {
    const ModelParams prm{2, 0.0, 1.0, 30};
    const auto basis = Basis::make(prm);
    const Point z = pt({0.4, 0.1}, {0.2, -0.3}), w = pt({-0.1, 0.5}, 0.3);
    CHECK(rel(schwartz_kernel(OperatorMatrix::identity(basis), z, w), kernel_T(z, w, prm).value) < 1e-14);
    const OperatorMatrix X = toeplitz(PolySymbol::monomial(MultiIndex{1, 0}, MultiIndex{0, 0}), basis);
    const cplx c(0.0, 2.0);
    CHECK(rel(schwartz_kernel(c * X, z, w), c * schwartz_kernel(X, z, w)) < 1e-15);
}

TEST_CASE("closed symbols of T_{x^k}") {
    const MultiIndex k{1, 0};
    const Point e1 = pt(1, 0);
    CHECK(berezin_toeplitz_series(MultiIndex{0, 0}, e1, e1, {2, 1.0, 1.0, 0}) == cplx(1.0));
    // n = 2, hbar = 0.1 on the diagonal: I_2(20) / I_1(20).
    CHECK(rel(berezin_toeplitz_p0(k, e1, e1, {2, 0.0, 0.1, 0}), 0.92598774858288472889) < 1e-14);
    CHECK(rel(berezin_toeplitz_series(k, e1, e1, {2, 0.0, 0.1, 0}), 0.92598774858288472889) < 1e-13);

    const ModelParams p1{2, 1.0, 1.0, 25};
    const cplx mat = berezin_symbol(toeplitz(PolySymbol::monomial(k, MultiIndex{0, 0}), Basis::make(p1)), e1, e1);
    CHECK(rel(berezin_toeplitz_series(k, e1, e1, p1), mat) < 1e-6);

    const ModelParams p0{2, 0.0, 0.5, 25};
    const Point z = pt({0.6, 0.2}, {0.3, -0.4}), w = pt({0.5, -0.1}, {0.2, 0.3});
    const cplx m0 = berezin_symbol(toeplitz(PolySymbol::monomial(k, MultiIndex{0, 0}), Basis::make(p0)), z, w);
    CHECK(rel(berezin_toeplitz_p0(k, z, w, p0), m0) < 1e-8);
    CHECK(rel(berezin_toeplitz_p0(k, z, w, p0), berezin_toeplitz_series(k, z, w, p0)) < 1e-10);
}

TEST_CASE("Berezin transform asymptotics") {
    const Point e1 = pt(1, 0);
    const auto c = berezin_asymptotics_fit(PolySymbol::constant(2, 3.0), e1, {0.4, 0.2, 0.1, 0.05}, 2, 0.0);
    CHECK(c.exact);
    const MultiIndex a{1, 0};
    const auto f = berezin_asymptotics_fit(PolySymbol::monomial(a, a), e1, {0.2, 0.1, 0.05, 0.025}, 2, 0.0);
    CHECK(!f.exact);
    CHECK(f.fit.slope == Approx(1.0).epsilon(0.15));
    CHECK_THROWS_AS(berezin_asymptotics_fit(PolySymbol::monomial(a, a), e1, {0.2, 0.1, 0.05, 0.025}, 2, 0.0, 10),
                    TruncationError);
    CHECK(berezin_min_degree(e1, 0.05) == 120);
}
