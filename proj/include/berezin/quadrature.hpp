#pragma once

#include "berezin/core.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace bq {

enum class RuleKind { RadialBesselK, SphereProductAngle, MonteCarloSphere };

struct RuleMeta {
    int n = 0;
    double p = 0.0;
    double hbar = 0.0;
    double cutoff = 0.0;      // radial: R (in units of hbar)
    std::vector<int> counts;  // radial: {nodes, panels}; sphere: {n_s, n_phi_1, ...}
    std::uint64_t seed = 0;
};

/// Nodes and positive weights. Radial nodes are one-component points holding r.
struct QuadratureRule {
    RuleKind kind = RuleKind::SphereProductAngle;
    std::vector<Point> nodes;
    std::vector<double> weights;
    RuleMeta meta;

    std::size_t size() const { return weights.size(); }
    double total_weight() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w);

/// Closed form of int |z|^{2k} dm = hbar^{2k} (n)_k (n+p)_k.
double radial_moment_closed(const ModelParams& params, int k);

/// Composite Gauss-Legendre rule on [0, R hbar] for the radial part of dm.
/// Panels are graded geometrically towards r = 0. No self-test.
QuadratureRule build_radial_rule_unchecked(const ModelParams& params, double R, int m);
/// As above, then verifies mass (1e-10) and moments k = 0..6 (1e-8 relative).
QuadratureRule build_radial_rule(const ModelParams& params, double R = 40.0, int m = 256);

/// Product rule on the sphere in C^n, n in {2, 3}. orders = {n_s} + one phase count
/// shared by all components, or {n_s, n_phi_1, ..., n_phi_n}.
QuadratureRule build_sphere_rule(int n, const std::vector<int>& orders);
/// Orders integrating x^a conj(x)^b exactly whenever |a| + |b| <= D.
std::vector<int> sphere_orders_for_degree(int n, int D);
/// Largest D for which the rule with these orders is exact on |a| + |b| <= D.
int sphere_rule_exact_degree(int n, const std::vector<int>& orders);
/// Rule exact on all pairs with |a|, |b| <= L; throws if the given orders fall short.
QuadratureRule build_sphere_rule_checked(int n, const std::vector<int>& orders, int L);

using SphereFunction = std::function<cplx(const Point&)>;

cplx integrate_sphere(const SphereFunction& f, const QuadratureRule& sphere);
cplx integrate_cn(const SphereFunction& f, const QuadratureRule& radial, const QuadratureRule& sphere);

struct McEstimate {
    cplx mean;
    double stderr_;
};

/// Monte Carlo mean over the sphere from normalized Gaussian vectors.
McEstimate mc_sphere(const SphereFunction& f, int n, std::size_t N, std::uint64_t seed);

/// Node coordinates (re/im per component, or r) followed by the weight.
void write_rule_csv(const QuadratureRule& rule, std::ostream& os);

}  // namespace bq
