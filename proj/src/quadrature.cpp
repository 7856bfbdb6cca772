#include "berezin/quadrature.hpp"

#include "berezin/csv.hpp"
#include "berezin/parallel.hpp"
#include "berezin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace bq {

double QuadratureRule::total_weight() const {
    return pairwise_sum(std::span<const double>(weights));
}

void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    if (m < 1) throw ConfigError("gauss_legendre: need at least one node");
    x.assign(std::size_t(m), 0.0);
    w.assign(std::size_t(m), 0.0);
    using ld = long double;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        ld t = std::cos(std::numbers::pi_v<ld> * (i + 0.75L) / (m + 0.5L));
        ld dp = 0;
        for (int it = 0; it < 100; ++it) {
            ld p0 = 1, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const ld p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1;
            dp = m * (t * p1 - p0) / (t * t - 1);
            const ld dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-19L) break;
        }
        {
            ld p0 = 1, p1 = t;
            for (int k = 2; k <= m; ++k) {
                const ld p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (m == 1) p0 = 1;
            dp = m * (t * p1 - p0) / (t * t - 1);
        }
        const ld wi = 2 / ((1 - t * t) * dp * dp);
        x[std::size_t(i)] = double(-t);
        x[std::size_t(m - 1 - i)] = double(t);
        w[std::size_t(i)] = double(wi);
        w[std::size_t(m - 1 - i)] = double(wi);
    }
    if (m % 2 == 1) x[std::size_t(m / 2)] = 0.0;
}

double radial_moment_closed(const ModelParams& params, int k) {
    return std::exp(2.0 * k * std::log(params.hbar) + log_pochhammer(double(params.n), unsigned(k)) +
                    log_pochhammer(params.n + params.p, unsigned(k)));
}

QuadratureRule build_radial_rule_unchecked(const ModelParams& params, double R, int m) {
    params.validate();
    if (m < 8) throw ConfigError("build_radial_rule: need m >= 8");
    if (m % 8 != 0) throw ConfigError("build_radial_rule: m must be a multiple of 8");
    if (!(R >= 10.0)) throw ConfigError("build_radial_rule: need R >= 10");

    const int q = m >= 64 ? 16 : 8;
    const int panels = m / q;
    // Geometric panels on [0, 1] resolve the weak singularity of K_p at 0.
    std::vector<double> bounds{0.0};
    const int graded = std::min(6, panels / 2);
    for (int g = graded - 1; g >= 0; --g) bounds.push_back(std::ldexp(1.0, -g));
    const double start = bounds.back();
    const int uniform = panels - graded;
    for (int u = 1; u <= uniform; ++u) bounds.push_back(start + (R - start) * u / uniform);

    std::vector<double> gx, gw;
    gauss_legendre(q, gx, gw);
    const int n = params.n;
    const double p = params.p;
    const double lognorm = std::log(4.0) - log_gamma(double(n)) - log_gamma(n + p);

    QuadratureRule rule;
    rule.kind = RuleKind::RadialBesselK;
    rule.meta = {n, p, params.hbar, R, {m, panels}, 0};
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        const double a = bounds[b], c = bounds[b + 1];
        const double half = 0.5 * (c - a), mid = 0.5 * (c + a);
        for (int i = 0; i < q; ++i) {
            const double t = mid + half * gx[std::size_t(i)];
            const double kp = bessel_k(p, 2.0 * t).value.real();
            const double w =
                gw[std::size_t(i)] * half * std::exp(lognorm + (2.0 * n - 1.0 + p) * std::log(t)) * kp;
            Point node(1);
            node[0] = params.hbar * t;
            rule.nodes.push_back(std::move(node));
            rule.weights.push_back(w);
        }
    }
    return rule;
}

QuadratureRule build_radial_rule(const ModelParams& params, double R, int m) {
    QuadratureRule rule = build_radial_rule_unchecked(params, R, m);
    const double mass = rule.total_weight();
    std::ostringstream diag;
    bool ok = std::abs(mass - 1.0) <= 1e-10;
    diag << "mass error " << std::abs(mass - 1.0);
    for (int k = 1; k <= 6; ++k) {
        std::vector<double> terms;
        for (std::size_t i = 0; i < rule.size(); ++i)
            terms.push_back(rule.weights[i] * std::pow(rule.nodes[i][0].real(), 2 * k));
        const double got = pairwise_sum(std::span<const double>(terms));
        const double want = radial_moment_closed(params, k);
        const double rel = std::abs(got / want - 1.0);
        diag << "; k=" << k << " rel error " << rel;
        if (!(rel <= 1e-8)) ok = false;
    }
    if (!ok)
        throw QuadratureError("radial rule failed its moment test (n=" + std::to_string(params.n) +
                              ", p=" + std::to_string(params.p) + ", m=" + std::to_string(m) +
                              "): " + diag.str());
    return rule;
}

namespace {

std::vector<int> expand_orders(int n, const std::vector<int>& orders) {
    if (n != 2 && n != 3) throw DomainError("sphere rule: only n = 2 or 3 supported");
    std::vector<int> full;
    if (orders.size() == 2) {
        full = {orders[0]};
        for (int i = 0; i < n; ++i) full.push_back(orders[1]);
    } else if (int(orders.size()) == n + 1) {
        full = orders;
    } else {
        throw ConfigError("sphere rule: orders must be {n_s, n_phi} or {n_s, n_phi_1..n_phi_n}");
    }
    for (int v : full)
        if (v < 1) throw ConfigError("sphere rule: orders must be positive");
    return full;
}

}  // namespace

QuadratureRule build_sphere_rule(int n, const std::vector<int>& orders) {
    const auto full = expand_orders(n, orders);
    const int ns = full[0];
    std::vector<double> gx, gw;
    gauss_legendre(ns, gx, gw);
    std::vector<double> s(static_cast<std::size_t>(ns)), ws(static_cast<std::size_t>(ns));
    for (int i = 0; i < ns; ++i) {
        s[std::size_t(i)] = 0.5 * (gx[std::size_t(i)] + 1.0);
        ws[std::size_t(i)] = 0.5 * gw[std::size_t(i)];
    }

    // Squared moduli are uniform on the simplex (density (n-1)!), phases uniform.
    std::vector<std::vector<double>> simplex;  // {s_1..s_n, weight}
    if (n == 2) {
        for (int i = 0; i < ns; ++i)
            simplex.push_back({s[std::size_t(i)], 1.0 - s[std::size_t(i)], ws[std::size_t(i)]});
    } else {
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j) {
                const double u = s[std::size_t(i)], v = s[std::size_t(j)];
                simplex.push_back({u, (1.0 - u) * v, (1.0 - u) * (1.0 - v),
                                   2.0 * ws[std::size_t(i)] * ws[std::size_t(j)] * (1.0 - u)});
            }
    }

    std::vector<std::vector<cplx>> phases(static_cast<std::size_t>(n));
    double phase_weight = 1.0;
    for (int c = 0; c < n; ++c) {
        const int N = full[std::size_t(c) + 1];
        phase_weight /= N;
        for (int j = 0; j < N; ++j)
            phases[std::size_t(c)].push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / N));
    }

    QuadratureRule rule;
    rule.kind = RuleKind::SphereProductAngle;
    rule.meta = {n, 0.0, 0.0, 0.0, full, 0};
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (const auto& sp : simplex) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            Point x(n);
            for (int c = 0; c < n; ++c)
                x[c] = std::sqrt(sp[std::size_t(c)]) * phases[std::size_t(c)][std::size_t(idx[std::size_t(c)])];
            rule.nodes.push_back(std::move(x));
            rule.weights.push_back(sp[std::size_t(n)] * phase_weight);
            int c = n - 1;
            while (c >= 0) {
                if (++idx[std::size_t(c)] < full[std::size_t(c) + 1]) break;
                idx[std::size_t(c)] = 0;
                --c;
            }
            if (c < 0) break;
        }
    }
    return rule;
}

std::vector<int> sphere_orders_for_degree(int n, int D) {
    if (n != 2 && n != 3) throw DomainError("sphere rule: only n = 2 or 3 supported");
    if (D < 0) throw ConfigError("sphere rule: negative degree");
    const int half = D / 2;
    // Simplex polynomial degree: half (n = 2) or half + 1 (n = 3, Jacobian factor).
    const int deg = n == 2 ? half : half + 1;
    return {(deg + 2) / 2, D + 1};
}

int sphere_rule_exact_degree(int n, const std::vector<int>& orders) {
    const auto full = expand_orders(n, orders);
    const int nphi = *std::min_element(full.begin() + 1, full.end());
    const int poly = 2 * full[0] - 1;
    const int half = n == 2 ? poly : poly - 1;
    return std::min(nphi - 1, 2 * half + 1);
}

QuadratureRule build_sphere_rule_checked(int n, const std::vector<int>& orders, int L) {
    const auto full = expand_orders(n, orders);
    const int nphi = *std::min_element(full.begin() + 1, full.end());
    const int poly = 2 * full[0] - 1;
    const int need = n == 2 ? L : L + 1;
    if (nphi < L + 1 || poly < need)
        throw ConfigError("sphere rule: orders too low for L = " + std::to_string(L));
    return build_sphere_rule(n, orders);
}

cplx integrate_sphere(const SphereFunction& f, const QuadratureRule& sphere) {
    return parallel_sum(sphere.size(), [&](std::size_t i) { return sphere.weights[i] * f(sphere.nodes[i]); });
}

cplx integrate_cn(const SphereFunction& f, const QuadratureRule& radial, const QuadratureRule& sphere) {
    const std::size_t ns = sphere.size();
    return parallel_sum(radial.size() * ns, [&](std::size_t i) {
        const std::size_t ir = i / ns, is = i % ns;
        const double r = radial.nodes[ir][0].real();
        return radial.weights[ir] * sphere.weights[is] * f(r * sphere.nodes[is]);
    });
}

McEstimate mc_sphere(const SphereFunction& f, int n, std::size_t N, std::uint64_t seed) {
    if (N < 1000) throw ConfigError("mc_sphere: need at least 1000 samples");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> vals(N);
    Point x(n);
    for (std::size_t i = 0; i < N; ++i) {
        for (int c = 0; c < n; ++c) {
            const double re = gauss(gen);
            const double im = gauss(gen);
            x[c] = cplx(re, im);
        }
        x /= x.norm();
        vals[i] = f(x);
    }
    const cplx mean = pairwise_sum(std::span<const cplx>(vals)) / double(N);
    std::vector<double> dev(N);
    for (std::size_t i = 0; i < N; ++i) dev[i] = std::norm(vals[i] - mean);
    const double var = pairwise_sum(std::span<const double>(dev)) / double(N - 1);
    return {mean, std::sqrt(var / double(N))};
}

void write_rule_csv(const QuadratureRule& rule, std::ostream& os) {
    std::vector<std::string> header;
    if (rule.kind == RuleKind::RadialBesselK) {
        header = {"r", "weight"};
    } else {
        for (int c = 1; c <= rule.meta.n; ++c) {
            header.push_back("x" + std::to_string(c) + "_re");
            header.push_back("x" + std::to_string(c) + "_im");
        }
        header.push_back("weight");
    }
    CsvTable t(header);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        std::vector<std::string> row;
        if (rule.kind == RuleKind::RadialBesselK) {
            row.push_back(fmt(rule.nodes[i][0].real()));
        } else {
            for (Eigen::Index c = 0; c < rule.nodes[i].size(); ++c) {
                row.push_back(fmt(rule.nodes[i][c].real()));
                row.push_back(fmt(rule.nodes[i][c].imag()));
            }
        }
        row.push_back(fmt(rule.weights[i]));
        t.add(std::move(row));
    }
    t.write(os);
}

}  // namespace bq
