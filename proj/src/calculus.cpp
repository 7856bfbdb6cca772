#include "berezin/calculus.hpp"

#include "berezin/kernels.hpp"
#include "berezin/parallel.hpp"
#include "berezin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bq {

OperatorMatrix::OperatorMatrix(BasisPtr basis, Sparse entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
    const auto d = Eigen::Index(basis_->size());
    if (entries_.rows() != d || entries_.cols() != d) throw DomainError("OperatorMatrix: dimension mismatch");
    entries_.makeCompressed();
}

OperatorMatrix OperatorMatrix::identity(BasisPtr basis) {
    const auto d = Eigen::Index(basis->size());
    Sparse I(d, d);
    I.setIdentity();
    return {std::move(basis), std::move(I)};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {basis_, Sparse(entries_.adjoint())}; }

double OperatorMatrix::hermitian_defect() const {
    const Sparse diff = entries_ - Sparse(entries_.adjoint());
    double m = 0;
    for (int c = 0; c < diff.outerSize(); ++c)
        for (Sparse::InnerIterator it(diff, c); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

namespace {

void require_same(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.basis() != b.basis()) {
        const auto& p = a.params();
        const auto& q = b.params();
        if (p.n != q.n || p.p != q.p || p.hbar != q.hbar || p.L != q.L)
            throw DomainError("OperatorMatrix: parameter mismatch");
    }
}

}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same(a, b);
    return {a.basis_, OperatorMatrix::Sparse(a.entries_ + b.entries_)};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same(a, b);
    return {a.basis_, OperatorMatrix::Sparse(a.entries_ - b.entries_)};
}

OperatorMatrix operator*(cplx c, const OperatorMatrix& a) {
    return {a.basis_, OperatorMatrix::Sparse(c * a.entries_)};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same(a, b);
    return {a.basis_, OperatorMatrix::Sparse(a.entries_ * b.entries_)};
}

PolySymbol PolySymbol::monomial(const MultiIndex& a, const MultiIndex& b, cplx coef) {
    if (a.size() != b.size()) throw DomainError("PolySymbol: index length mismatch");
    return PolySymbol{{SymbolTerm{coef, a, b}}};
}

PolySymbol PolySymbol::constant(int n, cplx c) {
    return monomial(MultiIndex::zero(n), MultiIndex::zero(n), c);
}

cplx PolySymbol::operator()(const Point& x) const {
    cplx s = 0;
    for (const auto& t : terms) {
        cplx v = t.coef;
        for (int i = 0; i < t.a.size(); ++i) v *= ipow(x[i], t.a[i]) * ipow(std::conj(x[i]), t.b[i]);
        s += v;
    }
    return s;
}

bool PolySymbol::is_constant() const {
    for (const auto& t : terms)
        if (t.a.degree() != 0 || t.b.degree() != 0) return false;
    return true;
}

OperatorMatrix toeplitz_monomial(const MultiIndex& a, const MultiIndex& b, const BasisPtr& basis) {
    const int n = basis->n();
    if (a.size() != n || b.size() != n) throw DomainError("toeplitz_monomial: index length mismatch");
    const IndexSet& idx = basis->index();
    const int L = idx.L();
    const auto& lphi = basis->log_phi();
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(idx.size());
    std::vector<int> mparts(static_cast<std::size_t>(n));
    for (std::size_t col = 0; col < idx.size(); ++col) {
        const MultiIndex& k = idx[col];
        bool ok = true;
        int deg = 0;
        for (int i = 0; i < n; ++i) {
            const int v = k[i] + a[i] - b[i];
            if (v < 0) {
                ok = false;
                break;
            }
            mparts[std::size_t(i)] = v;
            deg += v;
        }
        if (!ok || deg > L) continue;
        const MultiIndex m(mparts);
        const std::size_t row = idx.position(m);
        const double lv = lphi[col] + lphi[row] + log_monomial_sphere_moment(n, k + a);
        trip.emplace_back(Eigen::Index(row), Eigen::Index(col), cplx(std::exp(lv)));
    }
    const auto d = Eigen::Index(idx.size());
    OperatorMatrix::Sparse S(d, d);
    S.setFromTriplets(trip.begin(), trip.end());
    return {basis, std::move(S)};
}

OperatorMatrix toeplitz(const PolySymbol& symbol, const BasisPtr& basis) {
    const auto d = Eigen::Index(basis->size());
    OperatorMatrix::Sparse S(d, d);
    for (const auto& t : symbol.terms) S += t.coef * toeplitz_monomial(t.a, t.b, basis).entries();
    return {basis, std::move(S)};
}

namespace {

struct Overlap {
    cplx numerator;
    cplx denominator;
    double scale;
};

Overlap overlap(const OperatorMatrix& A, const Point& z, const Point& w) {
    const Basis& B = *A.basis();
    const Eigen::VectorXcd az = B.coherent_coefficients(z);
    const Eigen::VectorXcd aw = B.coherent_coefficients(w);
    const Eigen::VectorXcd Aaz = A.entries() * az;
    return {aw.dot(Aaz), aw.dot(az), az.norm() * aw.norm()};
}

}  // namespace

cplx berezin_symbol(const OperatorMatrix& A, const Point& z, const Point& w, double floor) {
    const Overlap o = overlap(A, z, w);
    if (!(std::abs(o.denominator) > floor * o.scale))
        throw SingularSetError("berezin_symbol: coherent-state overlap below the singular-set floor "
                               "(zeros of T(w, z) are excluded from the extended symbol)");
    return o.numerator / o.denominator;
}

SymbolDetail berezin_symbol_detail(const OperatorMatrix& A, const Point& z, const Point& w, double floor) {
    const Overlap o = overlap(A, z, w);
    if (!(std::abs(o.denominator) > floor * o.scale))
        throw SingularSetError("berezin_symbol: coherent-state overlap below the singular-set floor");
    SymbolDetail d;
    d.numerator = o.numerator;
    d.denominator = o.denominator;
    d.value = o.numerator / o.denominator;
    d.kernel_reference = kernel_T(w, z, A.params(), KernelRoute::Series).value;
    d.truncation_rel = kernel_truncation_tail(w, z, A.params()) / std::abs(d.kernel_reference);
    return d;
}

cplx schwartz_kernel(const OperatorMatrix& A, const Point& z, const Point& w) {
    const Basis& B = *A.basis();
    const Eigen::VectorXcd az = B.coherent_coefficients(z);
    const Eigen::VectorXcd aw = B.coherent_coefficients(w);
    return az.dot(A.entries() * aw);
}

cplx berezin_toeplitz_series(const MultiIndex& k, const Point& z, const Point& w,
                             const ModelParams& params, double tol) {
    using ld = long double;
    using lc = std::complex<long double>;
    const cplx zeta = cdot(w, z);
    if (zeta == cplx(0)) throw SingularSetError("berezin_toeplitz_series: w.z = 0");
    const double h = params.hbar;
    const double b = params.n + params.p;
    const int K = k.degree();
    const cplx v = zeta / (h * h);

    // Terms relative to t_0 = 1/(c_K Gamma(K+b)); ratio uses c_{l+1}/c_l = sqrt((n+l)/(b+l)).
    const ld n = params.n;
    const lc vl(v.real(), v.imag());
    lc term = 1, sum = 1;
    int run = 0;
    for (int l = 0; l < 1000000; ++l) {
        const ld cl = std::sqrt((n + l) / (ld(b) + l));
        const ld cKl = std::sqrt((n + K + l) / (ld(b) + K + l));
        term *= vl * (cl / cKl) / (ld(l + 1) * (ld(K) + l + b));
        sum += term;
        run = std::abs(term) < tol * std::abs(sum) ? run + 1 : 0;
        if (run >= 3 && ld(l) * l > std::abs(vl)) break;
    }
    const double log_t0 = -log_coherent_constant(K, params) - log_gamma(K + b);
    const EvalResult I = bessel_i(b - 1.0, 2.0 * principal_sqrt(zeta) / h);
    if (std::abs(I.value) <= I.est_abs_error)
        throw SingularSetError("berezin_toeplitz_series: Bessel denominator indistinguishable from zero");
    cplx wk = 1.0;
    for (int i = 0; i < k.size(); ++i) wk *= ipow(w[i] / h, k[i]);
    const cplx pref = principal_pow(v, 0.5 * (b - 1.0)) / I.value;
    return pref * wk * std::exp(log_t0) * cplx(double(sum.real()), double(sum.imag()));
}

cplx berezin_toeplitz_p0(const MultiIndex& k, const Point& z, const Point& w, const ModelParams& params) {
    if (params.p != 0.0) throw DomainError("berezin_toeplitz_p0: requires p = 0");
    const cplx zeta = cdot(w, z);
    if (zeta == cplx(0)) throw DomainError("berezin_toeplitz_p0: w.z = 0");
    const cplx s = principal_sqrt(zeta);
    const int n = params.n, K = k.degree();
    const EvalResult num = bessel_i(n + K - 1.0, 2.0 * s / params.hbar);
    const EvalResult den = bessel_i(n - 1.0, 2.0 * s / params.hbar);
    if (std::abs(den.value) <= den.est_abs_error)
        throw SingularSetError("berezin_toeplitz_p0: Bessel denominator indistinguishable from zero");
    cplx wk = 1.0;
    for (int i = 0; i < k.size(); ++i) wk *= ipow(w[i] / s, k[i]);
    return wk * num.value / den.value;
}

int berezin_min_degree(const Point& z, double hbar_min) {
    return int(std::ceil(6.0 * cnorm(z) / hbar_min - 1e-9));
}

AsymptoticFit berezin_asymptotics_fit(const PolySymbol& symbol, const Point& z,
                                      const std::vector<double>& hbar_grid, int n, double p, int L) {
    const double r = cnorm(z);
    if (r == 0.0) throw DomainError("berezin_asymptotics_fit: z = 0");
    if (hbar_grid.size() < 4) throw ConfigError("berezin_asymptotics_fit: need >= 4 grid points");
    for (std::size_t i = 1; i < hbar_grid.size(); ++i)
        if (!(hbar_grid[i] < hbar_grid[i - 1])) throw ConfigError("berezin_asymptotics_fit: grid must decrease");
    const int Lmin = berezin_min_degree(z, hbar_grid.back());
    if (L < 0) L = Lmin;
    if (L < Lmin)
        throw TruncationError("berezin_asymptotics_fit: L = " + std::to_string(L) +
                              " violates L >= 6|z|/hbar_min = " + std::to_string(Lmin));
    const Point x = z / r;
    const cplx target = symbol(x);
    AsymptoticFit f;
    f.hbar = hbar_grid;
    f.values = parallel_map<cplx>(hbar_grid.size(), [&](std::size_t i) {
        const auto basis = Basis::make({n, p, hbar_grid[i], L});
        return berezin_symbol(toeplitz(symbol, basis), z, z);
    });
    f.targets.assign(hbar_grid.size(), target);
    finish_fit(f);
    return f;
}

}  // namespace bq
