#pragma once

#include "berezin/core.hpp"
#include "berezin/fit.hpp"
#include "berezin/hilbert.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace bq {

/// Truncated operator on O: entry (m, k) is <A phi_k, phi_m>.
class OperatorMatrix {
  public:
    using Sparse = Eigen::SparseMatrix<cplx>;

    OperatorMatrix(BasisPtr basis, Sparse entries);
    static OperatorMatrix identity(BasisPtr basis);

    const BasisPtr& basis() const { return basis_; }
    const ModelParams& params() const { return basis_->params(); }
    const Sparse& entries() const { return entries_; }
    std::size_t dim() const { return basis_->size(); }

    cplx entry(std::size_t m, std::size_t k) const { return entries_.coeff(Eigen::Index(m), Eigen::Index(k)); }
    OperatorMatrix adjoint() const;
    double hermitian_defect() const;  // max |A - A*|

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(cplx c, const OperatorMatrix& a);
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

  private:
    BasisPtr basis_;
    Sparse entries_;
};

/// c x^a conj(x)^b.
struct SymbolTerm {
    cplx coef;
    MultiIndex a;
    MultiIndex b;
};

/// Polynomial in x and conj(x).
struct PolySymbol {
    std::vector<SymbolTerm> terms;

    static PolySymbol monomial(const MultiIndex& a, const MultiIndex& b, cplx coef = 1.0);
    static PolySymbol constant(int n, cplx c);
    cplx operator()(const Point& x) const;
    bool is_constant() const;
};

/// Toeplitz operator of x^a conj(x)^b; entries leaving degree <= L are dropped.
OperatorMatrix toeplitz_monomial(const MultiIndex& a, const MultiIndex& b, const BasisPtr& basis);
OperatorMatrix toeplitz(const PolySymbol& symbol, const BasisPtr& basis);

/// Singular-set floor relative to |K(., z)| |K(., w)|.
inline constexpr double kSingularFloor = 1e-12;

/// <A K(., z), K(., w)> / <K(., z), K(., w)>.
cplx berezin_symbol(const OperatorMatrix& A, const Point& z, const Point& w,
                    double floor = kSingularFloor);

struct SymbolDetail {
    cplx value;
    cplx numerator;
    cplx denominator;         // truncated overlap
    cplx kernel_reference;    // T(w, z) from the full series
    double truncation_rel;    // bound on the kernel mass above degree L, relative to |T(w, z)|
};
SymbolDetail berezin_symbol_detail(const OperatorMatrix& A, const Point& z, const Point& w,
                                   double floor = kSingularFloor);

/// <A K(., w), K(., z)>.
cplx schwartz_kernel(const OperatorMatrix& A, const Point& z, const Point& w);

/// Closed series for the extended symbol of the Toeplitz operator of x^k.
cplx berezin_toeplitz_series(const MultiIndex& k, const Point& z, const Point& w,
                             const ModelParams& params, double tol = 1e-17);
/// p = 0 Bessel-ratio form of the same symbol.
cplx berezin_toeplitz_p0(const MultiIndex& k, const Point& z, const Point& w, const ModelParams& params);

/// Smallest L allowed by the truncation rule L >= 6 |z| / hbar_min.
int berezin_min_degree(const Point& z, double hbar_min);

/// Berezin transform of the Toeplitz operator of `symbol` at z over hbar_grid, compared
/// with symbol(z/|z|). L < 0 selects the minimum allowed degree.
AsymptoticFit berezin_asymptotics_fit(const PolySymbol& symbol, const Point& z,
                                      const std::vector<double>& hbar_grid, int n, double p, int L = -1);

}  // namespace bq
