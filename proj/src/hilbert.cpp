#include "berezin/hilbert.hpp"

#include "berezin/csv.hpp"
#include "berezin/specfun.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace bq {

Basis::Basis(const ModelParams& params) : params_(params), index_(params.n, params.L) {
    params_.validate();
    const double lh = std::log(params_.hbar);
    log_phi_.reserve(index_.size());
    log_cap_phi_.reserve(index_.size());
    for (std::size_t i = 0; i < index_.size(); ++i) {
        const MultiIndex& k = index_[i];
        const unsigned d = unsigned(index_.degrees()[i]);
        const double lf = k.log_factorial();
        log_phi_.push_back(0.5 * (log_pochhammer(double(params_.n), d) - lf));
        log_cap_phi_.push_back(-double(d) * lh - 0.5 * (log_pochhammer(params_.n + params_.p, d) + lf));
    }
}

std::shared_ptr<const Basis> Basis::make(const ModelParams& params) {
    return std::shared_ptr<const Basis>(new Basis(params));
}

Eigen::VectorXcd Basis::monomials(const Point& z, const std::vector<double>& logc,
                                  bool conjugate) const {
    const int n = params_.n;
    if (z.size() != n) throw DomainError("Basis: point dimension mismatch");
    const int L = params_.L;
    // Per-component log modulus and phase powers; zero components handled separately.
    std::vector<double> logmod(static_cast<std::size_t>(n));
    std::vector<bool> is_zero(static_cast<std::size_t>(n));
    std::vector<std::vector<cplx>> phase(static_cast<std::size_t>(n), std::vector<cplx>(std::size_t(L) + 1));
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(z[j]);
        is_zero[std::size_t(j)] = (a == 0.0);
        logmod[std::size_t(j)] = a == 0.0 ? 0.0 : std::log(a);
        const cplx u = a == 0.0 ? cplx(1.0) : (conjugate ? std::conj(z[j]) : z[j]) / a;
        auto& ph = phase[std::size_t(j)];
        ph[0] = 1.0;
        for (int e = 1; e <= L; ++e) ph[std::size_t(e)] = ph[std::size_t(e) - 1] * u;
    }
    Eigen::VectorXcd out(Eigen::Index(index_.size()));
    for (std::size_t i = 0; i < index_.size(); ++i) {
        const MultiIndex& k = index_[i];
        double lm = logc[i];
        cplx ph = 1.0;
        bool zero = false;
        for (int j = 0; j < n; ++j) {
            const int e = k[j];
            if (e == 0) continue;
            if (is_zero[std::size_t(j)]) {
                zero = true;
                break;
            }
            lm += e * logmod[std::size_t(j)];
            ph *= phase[std::size_t(j)][std::size_t(e)];
        }
        out[Eigen::Index(i)] = zero ? cplx(0.0) : std::exp(lm) * ph;
    }
    return out;
}

Eigen::VectorXcd Basis::sphere_values(const Point& x) const { return monomials(x, log_phi_, false); }

Eigen::VectorXcd Basis::holo_values(const Point& z) const { return monomials(z, log_cap_phi_, false); }

Eigen::VectorXcd Basis::coherent_coefficients(const Point& z) const {
    return monomials(z, log_cap_phi_, true);
}

CoeffVector CoeffVector::zero(BasisPtr basis, Side side) {
    const auto size = Eigen::Index(basis->size());
    return {std::move(basis), side, Eigen::VectorXcd::Zero(size)};
}

CoeffVector CoeffVector::delta(BasisPtr basis, Side side, const MultiIndex& k) {
    CoeffVector v = zero(std::move(basis), side);
    v.coeffs[Eigen::Index(v.basis->index().position(k))] = 1.0;
    return v;
}

double phi_norm_const(const MultiIndex& k, int n) {
    return std::exp(0.5 * (log_pochhammer(double(n), unsigned(k.degree())) - k.log_factorial()));
}

double cap_phi_norm_const(const MultiIndex& k, const ModelParams& params) {
    const unsigned d = unsigned(k.degree());
    return std::exp(-double(d) * std::log(params.hbar) -
                    0.5 * (log_pochhammer(params.n + params.p, d) + k.log_factorial()));
}

namespace {

void require_compatible(const CoeffVector& u, const CoeffVector& v) {
    if (u.side != v.side) throw DomainError("inner_product: side mismatch");
    const auto& a = u.params();
    const auto& b = v.params();
    if (u.basis != v.basis &&
        (a.n != b.n || a.p != b.p || a.hbar != b.hbar || a.L != b.L))
        throw DomainError("inner_product: parameter mismatch");
}

}  // namespace

cplx inner_product(const CoeffVector& u, const CoeffVector& v) {
    require_compatible(u, v);
    return v.coeffs.dot(u.coeffs);  // Eigen conjugates the left operand
}

double norm(const CoeffVector& u) { return u.coeffs.norm(); }

CoeffVector transform_U(const CoeffVector& u) {
    if (u.side != Side::SphereBasis) throw DomainError("transform_U: expects a sphere-side vector");
    return {u.basis, Side::HoloBasis, u.coeffs};
}

CoeffVector transform_U_inverse(const CoeffVector& v) {
    if (v.side != Side::HoloBasis) throw DomainError("transform_U_inverse: expects a holomorphic-side vector");
    return {v.basis, Side::SphereBasis, v.coeffs};
}

void require_on_sphere(const Point& x, const char* who) {
    if (std::abs(x.norm() - 1.0) > kSphereTol)
        throw DomainError(std::string(who) + ": point is not on the unit sphere");
}

cplx eval_sphere(const CoeffVector& u, const Point& x) {
    if (u.side != Side::SphereBasis) throw DomainError("eval_sphere: expects a sphere-side vector");
    require_on_sphere(x, "eval_sphere");
    return u.basis->sphere_values(x).transpose() * u.coeffs;
}

cplx eval_holo(const CoeffVector& v, const Point& z) {
    if (v.side != Side::HoloBasis) throw DomainError("eval_holo: expects a holomorphic-side vector");
    return v.basis->holo_values(z).transpose() * v.coeffs;
}

void write_csv(const CoeffVector& u, std::ostream& os) {
    const int n = u.params().n;
    std::vector<std::string> header;
    for (int j = 1; j <= n; ++j) header.push_back("k_" + std::to_string(j));
    header.push_back("re");
    header.push_back("im");
    CsvTable t(header);
    const auto& idx = u.basis->index();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < n; ++j) row.push_back(fmt(idx[i][j]));
        const cplx c = u.coeffs[Eigen::Index(i)];
        row.push_back(fmt(c.real()));
        row.push_back(fmt(c.imag()));
        t.add(std::move(row));
    }
    t.write(os);
}

CoeffVector read_csv(std::istream& is, BasisPtr basis, Side side) {
    CoeffVector v = CoeffVector::zero(basis, side);
    const int n = basis->n();
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("read_csv: empty input");
    if (int(split_csv_line(line).size()) != n + 2) throw ConfigError("read_csv: header width mismatch");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (int(cells.size()) != n + 2) throw ConfigError("read_csv: row width mismatch");
        std::vector<int> parts;
        for (int j = 0; j < n; ++j) parts.push_back(int(parse_double(cells[std::size_t(j)])));
        const MultiIndex k(std::move(parts));
        if (!basis->index().contains(k)) throw ConfigError("read_csv: index outside the model");
        v.coeffs[Eigen::Index(basis->index().position(k))] =
            cplx(parse_double(cells[std::size_t(n)]), parse_double(cells[std::size_t(n) + 1]));
    }
    return v;
}

}  // namespace bq
