#pragma once

// Test-only oracles. Each one reaches its answer by a route independent of
// the library code it checks: cofactor expansion instead of Bareiss,
// exhaustive search instead of the adjugate, Fourier-Motzkin instead of the
// simplex method.

#include "mcremona/mcremona.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using mcremona::Integer;
using mcremona::IntMatrix;
using mcremona::IntVector;

/// Laplace expansion along the first row.
inline Integer cofactor_det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return a(0, 0);
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a(0, j) == 0)
            continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, c++) = a(i, k);
        const Integer term = a(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Integer(-term);
    }
    return total;
}

struct BruteInverse {
    IntVector gamma;
    IntMatrix inverse; // column j = w_j
};

/// Every W with entries in [0, max_entry] and gamma >= 0 such that
/// A * w_j - e_j is the same gamma for all j and W meets the canonical
/// restrictions.
inline std::vector<BruteInverse> brute_force_inverses(const mcremona::MonomialSet& set, int max_entry) {
    const std::size_t n = set.variable_count();
    const IntMatrix a = mcremona::log_matrix(set).entries;
    std::vector<std::map<IntVector, std::vector<IntVector>>> by_gamma(n);
    IntVector w(n, 0);
    while (true) {
        const IntVector y = a * w;
        for (std::size_t j = 0; j < n; ++j) {
            IntVector g = y;
            g[j] -= 1;
            bool nonneg = true;
            for (const auto& x : g)
                nonneg = nonneg && x >= 0;
            if (nonneg)
                by_gamma[j][g].push_back(w);
        }
        std::size_t i = 0;
        while (i < n && w[i] == max_entry) {
            w[i] = 0;
            ++i;
        }
        if (i == n)
            break;
        ++w[i];
    }
    std::vector<BruteInverse> out;
    for (const auto& [g, first] : by_gamma[0]) {
        bool everywhere = true;
        for (std::size_t j = 1; j < n; ++j)
            everywhere = everywhere && by_gamma[j].count(g);
        if (!everywhere)
            continue;
        // Enumerate one candidate per column.
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            std::vector<IntVector> cols;
            for (std::size_t j = 0; j < n; ++j)
                cols.push_back(by_gamma[j].at(g)[pick[j]]);
            const IntMatrix m = IntMatrix::from_columns(cols, n);
            bool canonical = true;
            for (std::size_t r = 0; r < n; ++r) {
                bool zero = false, nonzero = false;
                for (std::size_t c = 0; c < n; ++c)
                    (m(r, c) == 0 ? zero : nonzero) = true;
                canonical = canonical && zero && nonzero;
            }
            if (canonical)
                out.push_back({g, m});
            std::size_t k = 0;
            while (k < n && pick[k] + 1 == by_gamma[k].at(g).size()) {
                pick[k] = 0;
                ++k;
            }
            if (k == n)
                break;
            ++pick[k];
        }
    }
    return out;
}

/// Half-space description {z : a . z >= 0} of cone(gens) by eliminating the
/// multipliers from {z = sum lambda_j g_j, lambda >= 0}.
inline std::vector<IntVector> fourier_motzkin(const std::vector<IntVector>& gens) {
    const std::size_t q = gens.size(), m = gens.front().size();
    // Row layout: [lambda_1..lambda_q | z_1..z_m], meaning row . (lambda, z) >= 0.
    std::set<IntVector> rows;
    auto normalize = [](IntVector r) {
        Integer g = 0;
        for (const auto& x : r)
            g = mcremona::gcd(g, x);
        if (g > 1)
            for (auto& x : r)
                x /= g;
        return r;
    };
    for (std::size_t j = 0; j < q; ++j) {
        IntVector r(q + m);
        r[j] = 1;
        rows.insert(r);
    }
    for (std::size_t i = 0; i < m; ++i) {
        IntVector r(q + m);
        r[q + i] = 1;
        for (std::size_t j = 0; j < q; ++j)
            r[j] = -gens[j][i];
        rows.insert(normalize(r));
        for (auto& x : r)
            x = -x;
        rows.insert(normalize(r));
    }
    for (std::size_t k = 0; k < q; ++k) {
        std::vector<IntVector> pos, neg;
        std::set<IntVector> next;
        for (const auto& r : rows) {
            if (r[k] > 0)
                pos.push_back(r);
            else if (r[k] < 0)
                neg.push_back(r);
            else
                next.insert(r);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                IntVector c(q + m);
                for (std::size_t t = 0; t < q + m; ++t)
                    c[t] = p[t] * (-n[k]) + n[t] * p[k];
                bool zero = true;
                for (const auto& x : c)
                    zero = zero && x == 0;
                if (!zero)
                    next.insert(normalize(c));
            }
        rows = std::move(next);
    }
    std::vector<IntVector> out;
    for (const auto& r : rows)
        out.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(q), r.end());
    return out;
}

inline bool satisfies(const std::vector<IntVector>& halfspaces, const IntVector& z) {
    for (const auto& a : halfspaces) {
        Integer dot = 0;
        for (std::size_t i = 0; i < z.size(); ++i)
            dot += a[i] * z[i];
        if (dot < 0)
            return false;
    }
    return true;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    return m;
}

} // namespace oracle
