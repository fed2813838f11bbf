#pragma once

#include "mcremona/integer.hpp"
#include "mcremona/matrix.hpp"
#include "mcremona/monomial.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mcremona {

/// Cremona inverse of a monomial set, tied to it by A_F * inverse = Gamma + I.
struct InversionData {
    IntMatrix inverse_matrix; // column j: exponents of the j-th inverse monomial
    ExponentVector gamma;     // inversion vector; also the inversion factor's exponents
    Integer delta;            // degree of the inverse monomials

    const ExponentVector& inversion_factor() const noexcept { return gamma; }

    /// The inverse monomials as a set over the same variable names.
    MonomialSet inverse_set(const std::vector<std::string>& variables) const {
        return MonomialSet(variables, inverse_matrix.columns());
    }
};

struct BirationalityReport {
    Integer d;
    Integer minor_gcd;
    std::optional<Integer> determinant; // set when q == n
    bool is_birational_onto_image = false;
    bool is_cremona = false;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t total) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < total - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

} // namespace detail

/// gcd of |all n x n minors|, 0 when every minor vanishes. Every minor of a
/// d-stochastic matrix is a multiple of d, so the scan stops once it hits d.
inline Integer minor_gcd(const LogMatrix& m) {
    const std::size_t n = m.rows(), q = m.cols();
    if (q < n)
        throw ContractError("minor_gcd needs at least as many monomials as variables");
    if (!m.stochastic())
        throw ContractError("minor_gcd needs a stochastic log-matrix");
    Integer g = 0;
    auto idx = detail::first_combination(n);
    do {
        g = gcd(g, determinant(m.entries.select_columns(idx)));
        if (g == *m.degree)
            break;
    } while (detail::next_combination(idx, q));
    return g;
}

inline BirationalityReport is_cremona(const MonomialSet& set) {
    const auto canon = check_canonical(set);
    if (!canon.ok())
        throw ContractError("canonical restrictions violated; reduce the set first");
    const LogMatrix lm = log_matrix(set);
    if (!lm.stochastic())
        throw ContractError("monomials must share a common degree");
    BirationalityReport rep;
    rep.d = *lm.degree;
    if (set.size() >= set.variable_count()) {
        rep.minor_gcd = minor_gcd(lm);
        rep.is_birational_onto_image = rep.minor_gcd == rep.d;
    }
    if (set.size() == set.variable_count()) {
        rep.determinant = determinant(lm.entries);
        rep.is_cremona = abs(*rep.determinant) == rep.d;
    }
    return rep;
}

/// Exact identity check A_F * w_j == gamma + e_j for every column j.
inline bool verify_by_matrix(const MonomialSet& set, const InversionData& inv) {
    const std::size_t n = set.variable_count();
    if (set.size() != n || inv.inverse_matrix.rows() != n || inv.inverse_matrix.cols() != n || inv.gamma.size() != n)
        return false;
    const IntMatrix product = log_matrix(set).entries * inv.inverse_matrix;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (product(i, j) != inv.gamma[i] + (i == j ? 1 : 0))
                return false;
    return true;
}

namespace detail {

using SparseMonomial = std::map<std::size_t, Integer>;

inline SparseMonomial sparse(const ExponentVector& v) {
    SparseMonomial m;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            m[i] = v[i];
    return m;
}

inline void multiply_power(SparseMonomial& acc, const SparseMonomial& base, const Integer& k) {
    if (k == 0)
        return;
    for (const auto& [var, e] : base)
        acc[var] += e * k;
}

} // namespace detail

/// Substitutes the monomials of F into each inverse monomial and checks that
/// coordinate j of the composite is x_j * x^gamma.
inline bool verify_by_substitution(const MonomialSet& set, const InversionData& inv) {
    const std::size_t n = set.variable_count();
    if (set.size() != n || inv.inverse_matrix.rows() != n || inv.inverse_matrix.cols() != n || inv.gamma.size() != n)
        return false;
    std::vector<detail::SparseMonomial> f;
    for (const auto& v : set.vectors())
        f.push_back(detail::sparse(v));
    const auto factor = detail::sparse(inv.gamma);
    for (std::size_t j = 0; j < n; ++j) {
        detail::SparseMonomial composite;
        for (std::size_t i = 0; i < n; ++i)
            detail::multiply_power(composite, f[i], inv.inverse_matrix(i, j));
        detail::SparseMonomial expected = factor;
        expected[j] += 1;
        if (composite != expected)
            return false;
    }
    return true;
}

inline bool verify_inversion(const MonomialSet& set, const InversionData& inv) {
    const bool by_matrix = verify_by_matrix(set, inv);
    const bool by_substitution = verify_by_substitution(set, inv);
    if (by_matrix != by_substitution)
        throw InternalError("matrix and substitution checks disagree");
    return by_matrix;
}

/// Unique Cremona inverse satisfying the canonical restrictions: take
/// M = +-adj(A_F) with A_F * M = d * I, shift each row of M / d so its minimum
/// is zero, and read gamma off A_F * w_j - e_j.
inline InversionData invert(const MonomialSet& set) {
    const BirationalityReport rep = is_cremona(set);
    if (!rep.is_cremona)
        throw ContractError("not a Cremona set: need q = n and |det| = d");
    const std::size_t n = set.variable_count();
    const IntMatrix a = log_matrix(set).entries;
    AdjugateResult adj = adjugate(a);
    if (abs(adj.det) != rep.d)
        throw InternalError("adjugate determinant disagrees with the Cremona determinant");
    IntMatrix m = std::move(adj.adjugate);
    if (adj.det < 0)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = -m(i, j);

    InversionData inv{IntMatrix(n, n), ExponentVector(n), 0};
    for (std::size_t i = 0; i < n; ++i) {
        Integer lo = m(i, 0);
        for (std::size_t j = 1; j < n; ++j)
            lo = std::min(lo, m(i, j));
        for (std::size_t j = 0; j < n; ++j) {
            Integer q, r;
            boost::multiprecision::divide_qr(Integer(m(i, j) - lo), rep.d, q, r);
            if (r != 0)
                throw InternalError("shifted inverse entry is not integral");
            inv.inverse_matrix(i, j) = q;
        }
    }

    const IntMatrix product = a * inv.inverse_matrix;
    for (std::size_t i = 0; i < n; ++i)
        inv.gamma[i] = product(i, 0) - (i == 0 ? 1 : 0);

    // Invariants the unique inverse must satisfy; any failure is a bug here.
    if (!verify_by_matrix(set, inv))
        throw InternalError("inversion equation fails");
    for (const auto& g : inv.gamma)
        if (g < 0)
            throw InternalError("negative inversion vector");
    const Integer gamma_size = total_degree(inv.gamma);
    Integer q, r;
    boost::multiprecision::divide_qr(Integer(gamma_size + 1), rep.d, q, r);
    if (r != 0)
        throw InternalError("|gamma| + 1 is not divisible by d");
    inv.delta = q;
    for (std::size_t j = 0; j < n; ++j)
        if (total_degree(inv.inverse_matrix.column(j)) != inv.delta)
            throw InternalError("inverse is not delta-stochastic");
    const MonomialSet inverse = inv.inverse_set(set.variables());
    if (!check_canonical(inverse).ok())
        throw InternalError("inverse violates the canonical restrictions");
    if (abs(determinant(inv.inverse_matrix)) != inv.delta)
        throw InternalError("|det| of the inverse differs from delta");
    return inv;
}

/// Renders x^gamma, "1" for gamma = 0.
inline std::string inversion_factor(const InversionData& inv, const std::vector<std::string>& variables) {
    return render_monomial(inv.gamma, variables);
}

} // namespace mcremona
