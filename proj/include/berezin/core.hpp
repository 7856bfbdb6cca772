#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace bq {

using cplx = std::complex<double>;
using Point = Eigen::VectorXcd;

// Configuration or argument outside the supported domain.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Inconsistent or unsupported run configuration.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Denominator of an extended symbol below the singular-set floor.
class SingularSetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Degree cutoff too small for the requested evaluation point.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Quadrature rule failed its self-test.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Closed pairing formula does not apply to the given indices.
class NotCoveredError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Hermitian pairing z·w = sum_i z_i conj(w_i).
inline cplx cdot(const Point& z, const Point& w) {
    cplx s = 0;
    for (Eigen::Index i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

/// Euclidean norm |z|.
inline double cnorm(const Point& z) { return z.norm(); }

/// Model parameters (n, p, hbar, L).
struct ModelParams {
    int n = 2;
    double p = 0.0;
    double hbar = 1.0;
    int L = 8;

    void validate() const {
        if (n < 2) throw ConfigError("n must be >= 2, got " + std::to_string(n));
        if (!(p > -double(n))) throw ConfigError("p must exceed -n, got " + std::to_string(p));
        if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
        if (L < 0) throw ConfigError("L must be non-negative");
    }
};

}  // namespace bq
