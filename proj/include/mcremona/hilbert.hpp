#pragma once

#include "mcremona/integer.hpp"
#include "mcremona/inversion.hpp"
#include "mcremona/matrix.hpp"
#include "mcremona/monomial.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace mcremona {

// ---------------------------------------------------------------------------
// Exact cone membership

namespace detail {

/// Phase-one simplex over Q with Bland's rule: is there lambda >= 0 with
/// sum_j lambda_j * gens[j] == target?
inline bool nonnegative_combination_exists(const std::vector<IntVector>& gens, const IntVector& target) {
    const std::size_t m = target.size(), q = gens.size();
    for (const auto& g : gens)
        if (g.size() != m)
            throw ContractError("generator dimension mismatch");
    // Columns: q structural, m artificial, then the right-hand side.
    const std::size_t width = q + m + 1;
    std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int sign = target[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < q; ++j)
            t[i][j] = Rational(gens[j][i] * sign);
        t[i][q + i] = 1;
        t[i][width - 1] = Rational(target[i] * sign);
        basis[i] = q + i;
    }
    // Reduced costs of the phase-one objective sum of artificials.
    for (std::size_t j = 0; j < width; ++j) {
        if (j >= q && j < q + m)
            continue;
        Rational acc = 0;
        for (std::size_t i = 0; i < m; ++i)
            acc -= t[i][j];
        t[m][j] = acc;
    }

    while (true) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (t[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter == width)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0)
                continue;
            Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m)
            throw InternalError("phase-one simplex is unbounded");
        const Rational piv = t[leave][enter];
        for (auto& x : t[leave])
            x /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || t[i][enter] == 0)
                continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j)
                t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    return t[m][width - 1] == 0;
}

} // namespace detail

/// Generators (v_j, 1) of the cone over a stochastic monomial set.
struct LiftedCone {
    std::vector<IntVector> generators;
    Integer degree; // common degree d of the underlying monomials

    std::size_t dimension() const noexcept { return generators.empty() ? 0 : generators.front().size(); }
};

/// Strong convexity: no nonzero nonnegative combination of the generators vanishes.
inline bool is_pointed(const std::vector<IntVector>& generators) {
    if (generators.empty())
        return true;
    std::vector<IntVector> augmented;
    for (auto g : generators) {
        g.push_back(1);
        augmented.push_back(std::move(g));
    }
    IntVector target(augmented.front().size());
    target.back() = 1;
    return !detail::nonnegative_combination_exists(augmented, target);
}

inline LiftedCone lift(const MonomialSet& set) {
    const LogMatrix lm = log_matrix(set);
    if (!lm.stochastic())
        throw ContractError("lifting needs monomials of a common degree");
    LiftedCone cone{{}, *lm.degree};
    for (auto v : set.vectors()) {
        v.push_back(1);
        cone.generators.push_back(std::move(v));
    }
    if (!is_pointed(cone.generators))
        throw InternalError("lifted cone is not pointed");
    return cone;
}

inline bool cone_contains(const LiftedCone& cone, const IntVector& z) {
    if (z.size() != cone.dimension())
        throw ContractError("point dimension differs from the cone dimension");
    return detail::nonnegative_combination_exists(cone.generators, z);
}

namespace detail {

using DeadStates = std::set<std::tuple<IntVector, std::size_t, std::size_t>>;

/// Chooses `count` generators (with repetition, nondecreasing index) whose sum
/// is exactly `residual` (exact = true) or componentwise at most `residual`.
inline bool pick_generators(const std::vector<IntVector>& gens, IntVector& residual, std::size_t count,
                            std::size_t start, bool exact, DeadStates& dead) {
    if (count == 0) {
        if (!exact)
            return true;
        return std::all_of(residual.begin(), residual.end(), [](const Integer& x) { return x == 0; });
    }
    if (dead.count({residual, start, count}))
        return false;
    for (std::size_t j = start; j < gens.size(); ++j) {
        bool fits = true;
        for (std::size_t i = 0; i < residual.size() && fits; ++i)
            fits = gens[j][i] <= residual[i];
        if (!fits)
            continue;
        for (std::size_t i = 0; i < residual.size(); ++i)
            residual[i] -= gens[j][i];
        const bool ok = pick_generators(gens, residual, count - 1, j, exact, dead);
        for (std::size_t i = 0; i < residual.size(); ++i)
            residual[i] += gens[j][i];
        if (ok)
            return true;
    }
    dead.insert({residual, start, count});
    return false;
}

} // namespace detail

/// Membership in N H. Every generator has last coordinate 1, so a point at
/// level t must be a sum of exactly t generators.
inline bool semigroup_contains(const LiftedCone& cone, const IntVector& z) {
    if (z.size() != cone.dimension())
        throw ContractError("point dimension differs from the cone dimension");
    if (z.back() < 0)
        throw ContractError("negative last coordinate");
    for (const auto& x : z)
        if (x < 0)
            return false;
    const std::size_t t = static_cast<std::size_t>(to_int64(z.back()));
    IntVector residual(z.begin(), z.end() - 1);
    std::vector<IntVector> gens;
    for (const auto& g : cone.generators)
        gens.emplace_back(g.begin(), g.end() - 1);
    detail::DeadStates dead;
    return detail::pick_generators(gens, residual, t, 0, true, dead);
}

// ---------------------------------------------------------------------------
// Bounded checks

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "inconclusive";
    }
}

/// Outcome of an enumeration complete only up to `bound` on the last coordinate.
struct BoundedReport {
    Verdict verdict = Verdict::holds;
    std::size_t bound = 0;
    std::optional<IntVector> counterexample; // set iff verdict == fails
    std::size_t points_checked = 0;          // lattice points that passed cone membership
    bool complete_up_to_bound = true;        // false when a point budget cut the search short
};

using HilbertReport = BoundedReport;
using NormalityReport = BoundedReport;

struct CheckOptions {
    std::size_t workers = 1;
    std::size_t max_points = 5'000'000; // box points per level before giving up as inconclusive
};

namespace detail {

struct PointOutcome {
    bool in_cone = false;
    bool in_semigroup = true;
};

/// Enumerates, level by level, every box point in lexicographic order and
/// returns the first one inside the cone but outside the semigroup. Workers
/// split a level by stride; the minimum failing index keeps output identical
/// for any worker count.
template <class Prefilter, class Test>
BoundedReport bounded_search(std::size_t bound, const std::vector<Integer>& box_per_level_unit,
                             const std::vector<Integer>& box_fixed, Prefilter prefilter, Test test,
                             const CheckOptions& opt) {
    BoundedReport rep;
    rep.bound = bound;
    const std::size_t n = box_fixed.size();
    for (std::size_t t = 1; t <= bound; ++t) {
        std::vector<Integer> hi(n);
        Integer total = 1;
        for (std::size_t i = 0; i < n; ++i) {
            hi[i] = box_per_level_unit[i] * t + box_fixed[i];
            total *= hi[i] + 1;
        }
        if (total > opt.max_points) {
            rep.verdict = Verdict::inconclusive;
            rep.complete_up_to_bound = false;
            rep.bound = t - 1;
            return rep;
        }
        std::vector<IntVector> points;
        IntVector cur(n);
        while (true) {
            IntVector z = cur;
            z.push_back(t);
            if (prefilter(z))
                points.push_back(std::move(z));
            std::size_t i = n;
            while (i > 0 && cur[i - 1] == hi[i - 1]) {
                cur[i - 1] = 0;
                --i;
            }
            if (i == 0)
                break;
            ++cur[i - 1];
        }

        const std::size_t workers = std::max<std::size_t>(1, std::min(opt.workers, points.size()));
        std::vector<std::size_t> first_fail(workers, points.size());
        std::vector<std::size_t> in_cone(workers, 0);
        auto run = [&](std::size_t w) {
            for (std::size_t k = w; k < points.size(); k += workers) {
                if (k > first_fail[w])
                    break;
                const PointOutcome o = test(points[k]);
                if (!o.in_cone)
                    continue;
                ++in_cone[w];
                if (!o.in_semigroup) {
                    first_fail[w] = k;
                    break;
                }
            }
        };
        if (workers == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back(run, w);
            for (auto& th : pool)
                th.join();
        }
        const std::size_t fail = *std::min_element(first_fail.begin(), first_fail.end());
        if (fail < points.size()) {
            rep.verdict = Verdict::fails;
            rep.counterexample = points[fail];
            // Count cone points preceding the witness, independent of the split.
            std::size_t before = 0;
            for (std::size_t k = 0; k <= fail; ++k)
                before += test(points[k]).in_cone ? 1 : 0;
            rep.points_checked += before;
            return rep;
        }
        for (std::size_t c : in_cone)
            rep.points_checked += c;
    }
    return rep;
}

} // namespace detail

/// Checks Z^{n+1} cap R_+H == N H for all lattice points with
/// 1 <= last coordinate <= bound.
inline HilbertReport is_hilbert_base(const LiftedCone& cone, std::size_t bound, const CheckOptions& opt = {}) {
    if (bound < 1)
        throw ContractError("bound must be at least 1");
    const std::size_t n = cone.dimension() - 1;
    std::vector<Integer> per_level(n, 0), fixed(n, 0);
    for (const auto& g : cone.generators)
        for (std::size_t i = 0; i < n; ++i)
            per_level[i] = std::max(per_level[i], g[i]);
    // Cone points over d-stochastic generators satisfy sum_i z_i = d * z_{n+1}.
    auto prefilter = [&](const IntVector& z) {
        Integer sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            sum += z[i];
        return sum == cone.degree * z[n];
    };
    auto test = [&](const IntVector& z) {
        detail::PointOutcome o;
        o.in_cone = cone_contains(cone, z);
        if (o.in_cone)
            o.in_semigroup = semigroup_contains(cone, z);
        return o;
    };
    return detail::bounded_search(bound, per_level, fixed, prefilter, test, opt);
}

/// Normality of the ideal generated by a stochastic set, through the Rees
/// semigroup H' = {(e_i, 0)} cup {(v_j, 1)}: checks Z H' cap R_+H' == N H' for
/// points with last coordinate 1..bound and first-block coordinates at most
/// bound * d + bound.
inline NormalityReport is_normal_ideal(const MonomialSet& set, std::size_t bound, const CheckOptions& opt = {}) {
    if (bound < 1)
        throw ContractError("bound must be at least 1");
    const LiftedCone cone = lift(set);
    const std::size_t n = set.variable_count();
    std::vector<IntVector> extended = cone.generators;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n + 1);
        e[i] = 1;
        extended.push_back(std::move(e));
    }
    std::vector<IntVector> tops;
    for (const auto& v : set.vectors())
        tops.push_back(v);
    const Integer limit = Integer(bound) * cone.degree + Integer(bound);
    std::vector<Integer> per_level(n, 0), fixed(n, limit);
    auto prefilter = [&](const IntVector& z) {
        Integer sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            sum += z[i];
        return sum >= cone.degree * z[n];
    };
    auto test = [&](const IntVector& z) {
        detail::PointOutcome o;
        o.in_cone = detail::nonnegative_combination_exists(extended, z);
        if (o.in_cone) {
            IntVector residual(z.begin(), z.end() - 1);
            detail::DeadStates dead;
            o.in_semigroup = detail::pick_generators(tops, residual, static_cast<std::size_t>(to_int64(z[n])), 0,
                                                     false, dead);
        }
        return o;
    };
    return detail::bounded_search(bound, per_level, fixed, prefilter, test, opt);
}

// ---------------------------------------------------------------------------
// Smith normal form

/// Diagonal of the Smith normal form (d_1 | d_2 | ..., nonnegative).
inline IntVector smith_invariants(IntMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    const std::size_t k_max = std::min(m, n);
    for (std::size_t k = 0; k < k_max; ++k) {
        while (true) {
            // Smallest nonzero |entry| in the trailing block goes to (k, k).
            std::size_t pi = m, pj = n;
            for (std::size_t i = k; i < m; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (a(i, j) != 0 && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m)
                break;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(pi, j));
            for (std::size_t i = 0; i < m; ++i)
                std::swap(a(i, k), a(i, pj));
            bool clean = true;
            for (std::size_t i = k + 1; i < m; ++i) {
                const Integer f = a(i, k) / a(k, k);
                if (f != 0)
                    for (std::size_t j = k; j < n; ++j)
                        a(i, j) -= f * a(k, j);
                clean = clean && a(i, k) == 0;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                const Integer f = a(k, j) / a(k, k);
                if (f != 0)
                    for (std::size_t i = k; i < m; ++i)
                        a(i, j) -= f * a(i, k);
                clean = clean && a(k, j) == 0;
            }
            if (!clean)
                continue;
            // Divisibility: fold an offending row into row k and retry.
            std::size_t bad = m;
            for (std::size_t i = k + 1; i < m && bad == m; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (a(i, j) % a(k, k) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m)
                break;
            for (std::size_t j = k; j < n; ++j)
                a(k, j) += a(bad, j);
        }
    }
    IntVector diag(k_max);
    for (std::size_t k = 0; k < k_max; ++k)
        diag[k] = abs(a(k, k));
    return diag;
}

/// |Z^n / lattice spanned by `vectors`|, or 0 when the span has lower rank.
inline Integer smith_lattice_index(const std::vector<IntVector>& vectors) {
    if (vectors.empty())
        return 1;
    const std::size_t n = vectors.front().size();
    if (vectors.size() != n)
        throw ContractError("lattice index needs n vectors in dimension n");
    Integer index = 1;
    for (const auto& x : smith_invariants(IntMatrix::from_columns(vectors, n)))
        index *= x;
    return index;
}

// ---------------------------------------------------------------------------
// Cremona subsets of a stochastic set

struct CremonaSubsetReport {
    Integer d;
    std::vector<std::vector<std::size_t>> determinant_d_subsets; // every n-subset with |det| = d
    std::vector<std::vector<std::size_t>> cremona_subsets;       // those also meeting the canonical restrictions
    std::vector<std::vector<std::size_t>> classes;               // one representative per permutation class
};

/// All n-subsets of columns with |det| = d, cross-checked against the Smith
/// lattice index and is_cremona. Subsets with a common factor (or a missing
/// variable) stay in determinant_d_subsets only.
inline CremonaSubsetReport find_cremona_subsets(const MonomialSet& set) {
    const LogMatrix lm = log_matrix(set);
    const std::size_t n = set.variable_count(), q = set.size();
    if (!lm.stochastic())
        throw ContractError("monomials must share a common degree");
    if (q < n)
        throw ContractError("need at least n monomials");
    if (rank(lm.entries) < n)
        throw ContractError("the column lattice has rank below n");
    CremonaSubsetReport rep;
    rep.d = *lm.degree;
    auto idx = detail::first_combination(n);
    do {
        const IntMatrix sub = lm.entries.select_columns(idx);
        if (abs(determinant(sub)) != rep.d)
            continue;
        if (smith_lattice_index(sub.columns()) != rep.d)
            throw InternalError("Smith lattice index disagrees with |det|");
        rep.determinant_d_subsets.push_back(idx);
        const MonomialSet picked = set.subset(idx);
        if (!check_canonical(picked).ok())
            continue;
        if (!is_cremona(picked).is_cremona)
            throw InternalError("determinant-d subset is not reported as Cremona");
        rep.cremona_subsets.push_back(idx);
        const bool known = std::any_of(rep.classes.begin(), rep.classes.end(), [&](const auto& rep_idx) {
            return equivalent_up_to_permutation(sub, lm.entries.select_columns(rep_idx));
        });
        if (!known)
            rep.classes.push_back(idx);
    } while (detail::next_combination(idx, q));
    return rep;
}

/// First Cremona subset in lexicographic column order. A normal ideal always
/// has one; `bound` is the normality bound the caller confirmed.
inline MonomialSet cremona_from_normal(const MonomialSet& set, std::size_t bound) {
    const CremonaSubsetReport rep = find_cremona_subsets(set);
    if (rep.cremona_subsets.empty())
        throw ContractError("no Cremona subset found: the ideal is not normal beyond bound " + std::to_string(bound) +
                            " or the column lattice is rank deficient");
    return set.subset(rep.cremona_subsets.front());
}

} // namespace mcremona
