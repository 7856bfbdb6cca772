#pragma once

#include "berezin/core.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace bq {

/// Length-n vector of naturals.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> parts);
    MultiIndex(std::initializer_list<int> parts);

    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(std::size_t(n), 0)); }
    static MultiIndex unit(int n, int i);

    int size() const { return int(parts_.size()); }
    int degree() const;
    int operator[](int i) const { return parts_[std::size_t(i)]; }
    const std::vector<int>& parts() const { return parts_; }

    /// log(k!) = sum_i log(k_i!).
    double log_factorial() const;
    /// Componentwise this >= other.
    bool dominates(const MultiIndex& other) const;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    /// Componentwise difference; throws when a negative part would result.
    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

  private:
    std::vector<int> parts_;
};

/// Graded-lex order: lower degree first, then lexicographically descending.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of length n and degree l in graded-lex order.
std::vector<MultiIndex> enumerate_degree(int n, int l);

/// Binomial coefficient as an unsigned 64-bit integer (exact while it fits).
std::uint64_t binomial(int top, int bottom);

/// All multi-indices of degree <= L, in graded-lex order, with O(n) rank lookup.
class IndexSet {
  public:
    IndexSet(int n, int L);

    int n() const { return n_; }
    int L() const { return L_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }

    /// Position of k; requires k.size() == n and |k| <= L.
    std::size_t position(const MultiIndex& k) const;
    bool contains(const MultiIndex& k) const;
    /// First position of degree l.
    std::size_t degree_offset(int l) const { return offsets_[std::size_t(l)]; }
    /// Degree of each stored index, aligned with indices().
    const std::vector<int>& degrees() const { return degrees_; }

    static std::size_t count(int n, int L);

  private:
    int n_;
    int L_;
    std::vector<MultiIndex> indices_;
    std::vector<int> degrees_;
    std::vector<std::size_t> offsets_;
};

/// Upper bound on s+l+|k|+|m| accepted by the expansion oracle.
inline constexpr int kOracleDegreeBound = 24;

double log_monomial_sphere_moment(int n, const MultiIndex& a);
/// Integral of x^a conj(x)^b over the normalized sphere in C^n.
double monomial_sphere_moment(int n, const MultiIndex& a, const MultiIndex& b);

/// <x^k (x.z)^s, x^m (x.w)^l> on the sphere by the closed finite sums.
cplx sphere_pairing_closed(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                           const Point& w);
/// Same pairing by full multinomial expansion.
cplx sphere_pairing_oracle(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                           const Point& w);
/// Closed form where a dominance relation holds, expansion otherwise.
cplx sphere_pairing(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                    const Point& w);

/// Pairing of z^k (z.z')^s and z^m (z.w')^l in E_{n,p}.
cplx enp_moment(const MultiIndex& k, const MultiIndex& m, int s, int l, const Point& z,
                const Point& w, const ModelParams& params);

/// Integer power of a complex number by repeated squaring; 0^0 = 1.
cplx ipow(cplx base, int e);

}  // namespace bq
