#pragma once

#include "berezin/core.hpp"
#include "berezin/multiindex.hpp"

#include <iosfwd>
#include <memory>

namespace bq {

/// Which orthonormal basis a coefficient vector refers to.
enum class Side { SphereBasis, HoloBasis };

/// Truncated model: parameters, index set and per-index log normalization constants.
class Basis {
  public:
    static std::shared_ptr<const Basis> make(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    const IndexSet& index() const { return index_; }
    std::size_t size() const { return index_.size(); }
    int n() const { return params_.n; }

    /// log sqrt((n)_{|k|}/k!), aligned with index().
    const std::vector<double>& log_phi() const { return log_phi_; }
    /// log of 1/(hbar^{|k|} sqrt((n+p)_{|k|} k!)), aligned with index().
    const std::vector<double>& log_cap_phi() const { return log_cap_phi_; }

    /// phi_k(x) for every k.
    Eigen::VectorXcd sphere_values(const Point& x) const;
    /// Phi_k(z) for every k.
    Eigen::VectorXcd holo_values(const Point& z) const;
    /// Coefficients conj(Phi_k(z)) of the coherent state K(., z).
    Eigen::VectorXcd coherent_coefficients(const Point& z) const;

  private:
    explicit Basis(const ModelParams& params);
    Eigen::VectorXcd monomials(const Point& z, const std::vector<double>& logc, bool conjugate) const;

    ModelParams params_;
    IndexSet index_;
    std::vector<double> log_phi_;
    std::vector<double> log_cap_phi_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Truncated element of O (SphereBasis) or E_{n,p} (HoloBasis).
struct CoeffVector {
    BasisPtr basis;
    Side side = Side::SphereBasis;
    Eigen::VectorXcd coeffs;

    const ModelParams& params() const { return basis->params(); }
    static CoeffVector zero(BasisPtr basis, Side side);
    static CoeffVector delta(BasisPtr basis, Side side, const MultiIndex& k);
};

double phi_norm_const(const MultiIndex& k, int n);
double cap_phi_norm_const(const MultiIndex& k, const ModelParams& params);

cplx inner_product(const CoeffVector& u, const CoeffVector& v);
double norm(const CoeffVector& u);

CoeffVector transform_U(const CoeffVector& u);
CoeffVector transform_U_inverse(const CoeffVector& v);

cplx eval_sphere(const CoeffVector& u, const Point& x);
cplx eval_holo(const CoeffVector& v, const Point& z);

/// Tolerance on |x| - 1 for points that must lie on the sphere.
inline constexpr double kSphereTol = 1e-12;
void require_on_sphere(const Point& x, const char* who);

/// Columns k_1..k_n, re, im in graded-lex order.
void write_csv(const CoeffVector& u, std::ostream& os);
CoeffVector read_csv(std::istream& is, BasisPtr basis, Side side);

}  // namespace bq
