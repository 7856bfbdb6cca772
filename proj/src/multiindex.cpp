#include "berezin/multiindex.hpp"

#include "berezin/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bq {

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int v : parts_)
        if (v < 0) throw DomainError("MultiIndex: negative part");
}

MultiIndex::MultiIndex(std::initializer_list<int> parts) : MultiIndex(std::vector<int>(parts)) {}

MultiIndex MultiIndex::unit(int n, int i) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    v[std::size_t(i)] = 1;
    return MultiIndex(std::move(v));
}

int MultiIndex::degree() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

double MultiIndex::log_factorial() const {
    double s = 0;
    for (int v : parts_) s += log_gamma(double(v) + 1.0);
    return s;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i] < other.parts_[i]) return false;
    return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    std::vector<int> v(a.parts_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.parts_[i];
    return MultiIndex(std::move(v));
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
    std::vector<int> v(a.parts_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.parts_[i];
    return MultiIndex(std::move(v));
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(b.parts().begin(), b.parts().end(), a.parts().begin(),
                                        a.parts().end());
}

namespace {

void enumerate_rec(int pos, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    const int n = int(cur.size());
    if (pos == n - 1) {
        cur[std::size_t(pos)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[std::size_t(pos)] = v;
        enumerate_rec(pos + 1, remaining - v, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_degree(int n, int l) {
    if (n < 1) throw DomainError("enumerate_degree: n must be >= 1");
    std::vector<MultiIndex> out;
    out.reserve(binomial(l + n - 1, n - 1));
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    enumerate_rec(0, l, cur, out);
    return out;
}

std::uint64_t binomial(int top, int bottom) {
    if (bottom < 0 || bottom > top) return 0;
    bottom = std::min(bottom, top - bottom);
    std::uint64_t r = 1;
    for (int i = 1; i <= bottom; ++i) r = r * std::uint64_t(top - bottom + i) / std::uint64_t(i);
    return r;
}

IndexSet::IndexSet(int n, int L) : n_(n), L_(L) {
    if (n < 1 || L < 0) throw ConfigError("IndexSet: need n >= 1 and L >= 0");
    indices_.reserve(count(n, L));
    offsets_.reserve(std::size_t(L) + 2);
    for (int l = 0; l <= L; ++l) {
        offsets_.push_back(indices_.size());
        for (auto& k : enumerate_degree(n, l)) {
            indices_.push_back(std::move(k));
            degrees_.push_back(l);
        }
    }
    offsets_.push_back(indices_.size());
}

std::size_t IndexSet::count(int n, int L) { return std::size_t(binomial(L + n, n)); }

std::size_t IndexSet::position(const MultiIndex& k) const {
    if (k.size() != n_) throw DomainError("IndexSet::position: length mismatch");
    const int d = k.degree();
    if (d > L_) throw DomainError("IndexSet::position: degree above L");
    // Rank within the degree block: indices sharing a prefix with a larger next part come first.
    std::size_t rank = 0;
    int remaining = d;
    for (int i = 0; i + 1 < n_; ++i) {
        const int ki = k[i];
        const int rest_parts = n_ - i - 1;
        for (int v = ki + 1; v <= remaining; ++v)
            rank += std::size_t(binomial(remaining - v + rest_parts - 1, rest_parts - 1));
        remaining -= ki;
    }
    return offsets_[std::size_t(d)] + rank;
}

bool IndexSet::contains(const MultiIndex& k) const { return k.size() == n_ && k.degree() <= L_; }

double log_monomial_sphere_moment(int n, const MultiIndex& a) {
    return log_gamma(double(n)) + a.log_factorial() - log_gamma(double(n + a.degree()));
}

double monomial_sphere_moment(int n, const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != n || b.size() != n) throw DomainError("monomial_sphere_moment: length mismatch");
    if (!(a == b)) return 0.0;
    return std::exp(log_monomial_sphere_moment(n, a));
}

cplx ipow(cplx base, int e) {
    cplx r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

namespace {

cplx monomial(const Point& v, const MultiIndex& e, bool conjugate) {
    cplx r = 1.0;
    for (int i = 0; i < e.size(); ++i) r *= ipow(conjugate ? std::conj(v[i]) : v[i], e[i]);
    return r;
}

double log_factorial(int v) { return log_gamma(double(v) + 1.0); }

void check_args(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                const Point& w) {
    const int n = k.size();
    if (m.size() != n || z.size() != n || w.size() != n)
        throw DomainError("sphere pairing: dimension mismatch");
    if (s < 0 || l < 0) throw DomainError("sphere pairing: negative power");
}

}  // namespace

cplx sphere_pairing_closed(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                           const Point& w) {
    check_args(k, m, s, l, z, w);
    const int n = k.size();
    if (k.degree() + s != m.degree() + l) return 0.0;
    if (m.dominates(k)) {
        const MultiIndex d = m - k;
        const double pre = log_gamma(double(n)) + log_factorial(d.degree() + l) -
                           log_factorial(n - 1 + m.degree() + l);
        cplx sum = 0.0;
        for (const auto& beta : enumerate_degree(n, l)) {
            const double c = log_factorial(l) - beta.log_factorial() + (m + beta).log_factorial() -
                             (d + beta).log_factorial();
            sum += std::exp(c) * monomial(z, beta, true) * monomial(w, beta, false);
        }
        return std::exp(pre) * monomial(z, d, true) * sum;
    }
    if (k.dominates(m)) {
        const MultiIndex d = k - m;
        const double pre = log_gamma(double(n)) + log_factorial(s + d.degree()) -
                           log_factorial(k.degree() + s + n - 1);
        cplx sum = 0.0;
        for (const auto& alpha : enumerate_degree(n, s)) {
            const double c = log_factorial(s) - alpha.log_factorial() + (k + alpha).log_factorial() -
                             (d + alpha).log_factorial();
            sum += std::exp(c) * monomial(z, alpha, true) * monomial(w, alpha, false);
        }
        return std::exp(pre) * monomial(w, d, false) * sum;
    }
    throw NotCoveredError("sphere_pairing_closed: neither k >= m nor m >= k; use the oracle");
}

cplx sphere_pairing_oracle(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                           const Point& w) {
    check_args(k, m, s, l, z, w);
    const int n = k.size();
    if (s + l + k.degree() + m.degree() > kOracleDegreeBound)
        throw DomainError("sphere_pairing_oracle: degree bound " +
                          std::to_string(kOracleDegreeBound) + " exceeded");
    if (k.degree() + s != m.degree() + l) return 0.0;
    const auto alphas = enumerate_degree(n, s);
    const auto betas = enumerate_degree(n, l);
    cplx sum = 0.0;
    for (const auto& alpha : alphas) {
        const MultiIndex left = k + alpha;
        const double ca = log_factorial(s) - alpha.log_factorial();
        const cplx za = monomial(z, alpha, true);
        for (const auto& beta : betas) {
            const MultiIndex right = m + beta;
            if (!(left == right)) continue;
            const double c = ca + log_factorial(l) - beta.log_factorial() +
                             log_monomial_sphere_moment(n, left);
            sum += std::exp(c) * za * monomial(w, beta, false);
        }
    }
    return sum;
}

cplx sphere_pairing(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                    const Point& w) {
    check_args(k, m, s, l, z, w);
    if (k.degree() + s != m.degree() + l) return 0.0;
    if (m.dominates(k) || k.dominates(m)) return sphere_pairing_closed(k, m, s, l, z, w);
    return sphere_pairing_oracle(k, m, s, l, z, w);
}

cplx enp_moment(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                const Point& w, const ModelParams& params) {
    if (k.degree() + s != m.degree() + l) return 0.0;
    const int d = k.degree() + s;
    const double logr = 2.0 * d * std::log(params.hbar) + log_pochhammer(double(params.n), unsigned(d)) +
                        log_pochhammer(params.n + params.p, unsigned(d));
    return std::exp(logr) * sphere_pairing(k, m, s, l, z, w);
}

}  // namespace bq
