#include "berezin/multiindex.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace bq;
using doctest::Approx;

TEST_CASE("enumeration and index sets") {
    CHECK(enumerate_degree(2, 0).size() == 1);
    const auto d2 = enumerate_degree(2, 2);
    REQUIRE(d2.size() == 3);
    CHECK(d2[0] == MultiIndex{2, 0});
    CHECK(d2[1] == MultiIndex{1, 1});
    CHECK(d2[2] == MultiIndex{0, 2});
    CHECK(enumerate_degree(3, 2).size() == 6);
    const IndexSet s(3, 5);
    CHECK(s.size() == binomial(8, 3));
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.position(s[i]) == i);
    CHECK(!s.contains(MultiIndex{6, 0, 0}));
}

TEST_CASE("monomial sphere moments") {
    CHECK(monomial_sphere_moment(2, MultiIndex{0, 0}, MultiIndex{0, 0}) == Approx(1.0));
    CHECK(monomial_sphere_moment(2, MultiIndex{1, 1}, MultiIndex{1, 1}) == Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(monomial_sphere_moment(3, MultiIndex{2, 0, 0}, MultiIndex{2, 0, 0}) == Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(monomial_sphere_moment(2, MultiIndex{1, 0}, MultiIndex{0, 1}) == 0.0);
}

TEST_CASE("sphere pairing spot values") {
    Point e1(2), z(2);
    e1 << 1.0, 0.0;
    z << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const MultiIndex o{0, 0}, a{1, 0}, b{0, 1};
    CHECK(sphere_pairing(o, o, 0, 0, e1, e1) == cplx(1.0));
    CHECK(std::abs(sphere_pairing(o, o, 1, 1, e1, e1) - 0.5) < 1e-16);
    CHECK(sphere_pairing(a, o, 1, 1, e1, e1) == cplx(0.0));
    CHECK(sphere_pairing_oracle(a, o, 1, 1, e1, e1) == cplx(0.0));
    const cplx f = sphere_pairing(a, b, 1, 1, z, z);
    CHECK(std::abs(f - std::conj(sphere_pairing(b, a, 1, 1, z, z))) < 1e-16);
    CHECK(std::abs(f - sphere_pairing_oracle(a, b, 1, 1, z, z)) < 1e-16);
}

TEST_CASE("closed pairing matches the multinomial oracle") {
    std::mt19937_64 g(11);
    std::normal_distribution<double> N;
    std::uniform_int_distribution<int> part(0, 3);
    int done = 0;
    while (done < 200) {
        const int n = 2 + done % 2;
        const auto nn = static_cast<std::size_t>(n);
        std::vector<int> kv(nn), dv(nn);
        for (auto& x : kv) x = part(g);
        for (auto& x : dv) x = part(g) % 2;
        const MultiIndex k(kv), m = k + MultiIndex(dv);
        const int l = part(g), s = l + m.degree() - k.degree();
        if (k.degree() + m.degree() + s + l > kOracleDegreeBound) continue;
        Point z(n), w(n);
        for (int i = 0; i < n; ++i) {
            z[i] = {N(g), N(g)};
            w[i] = {N(g), N(g)};
        }
        const cplx a = sphere_pairing_closed(k, m, s, l, z, w), b = sphere_pairing_oracle(k, m, s, l, z, w);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
        ++done;
    }
}

TEST_CASE("weighted moments") {
    const ModelParams prm{2, 0.0, 1.0, 0};
    Point z = Point::Zero(2);
    const MultiIndex o{0, 0}, a{1, 0};
    CHECK(std::abs(enp_moment(o, o, 0, 0, z, z, prm) - 1.0) < 1e-15);
    CHECK(std::abs(enp_moment(a, a, 0, 0, z, z, prm) - 2.0) < 1e-14);
    CHECK(enp_moment(a, o, 0, 0, z, z, prm) == cplx(0.0));
}
