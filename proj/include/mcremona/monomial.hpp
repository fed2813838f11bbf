#pragma once

#include "mcremona/integer.hpp"
#include "mcremona/matrix.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcremona {

/// Exponents of one monomial, indexed by variable.
using ExponentVector = IntVector;

inline Integer total_degree(const ExponentVector& v) {
    return std::accumulate(v.begin(), v.end(), Integer(0));
}

/// An ordered list of distinct monomials over named variables.
class MonomialSet {
public:
    MonomialSet(std::vector<std::string> variables, std::vector<ExponentVector> vectors)
        : variables_(std::move(variables)), vectors_(std::move(vectors)) {
        if (variables_.size() < 2)
            throw ContractError("a monomial set needs at least two variables");
        if (vectors_.empty())
            throw ContractError("a monomial set needs at least one monomial");
        std::set<std::string> names(variables_.begin(), variables_.end());
        if (names.size() != variables_.size())
            throw ContractError("variable names must be distinct");
        std::set<ExponentVector> seen;
        for (const auto& v : vectors_) {
            if (v.size() != variables_.size())
                throw ContractError("exponent vector length differs from the variable count");
            for (const auto& e : v)
                if (e < 0)
                    throw ContractError("negative exponent");
            if (!seen.insert(v).second)
                throw ContractError("duplicate monomial");
        }
    }

    /// Convenience constructor naming the variables x1..xn.
    static MonomialSet with_default_names(std::vector<ExponentVector> vectors) {
        if (vectors.empty())
            throw ContractError("a monomial set needs at least one monomial");
        auto names = default_names(vectors.front().size());
        return MonomialSet(std::move(names), std::move(vectors));
    }

    static std::vector<std::string> default_names(std::size_t n) {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i)
            names.push_back("x" + std::to_string(i));
        return names;
    }

    std::size_t variable_count() const noexcept { return variables_.size(); }
    std::size_t size() const noexcept { return vectors_.size(); }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::vector<ExponentVector>& vectors() const noexcept { return vectors_; }
    const ExponentVector& operator[](std::size_t j) const { return vectors_[j]; }

    MonomialSet subset(std::span<const std::size_t> idx) const {
        std::vector<ExponentVector> picked;
        for (std::size_t j : idx)
            picked.push_back(vectors_.at(j));
        return MonomialSet(variables_, std::move(picked));
    }

    friend bool operator==(const MonomialSet&, const MonomialSet&) = default;

private:
    std::vector<std::string> variables_;
    std::vector<ExponentVector> vectors_;
};

/// Log-matrix: column j holds the exponents of monomial j.
struct LogMatrix {
    IntMatrix entries;
    std::optional<Integer> degree; // common column sum, when all columns agree

    std::size_t rows() const noexcept { return entries.rows(); }
    std::size_t cols() const noexcept { return entries.cols(); }
    bool stochastic() const noexcept { return degree.has_value(); }
};

inline LogMatrix log_matrix(const MonomialSet& set) {
    LogMatrix lm{IntMatrix::from_columns(set.vectors(), set.variable_count()), std::nullopt};
    Integer d = total_degree(set[0]);
    bool equal = true;
    for (const auto& v : set.vectors())
        equal = equal && total_degree(v) == d;
    if (equal && d >= 1)
        lm.degree = d;
    return lm;
}

struct CanonicalReport {
    bool no_common_factor = true;      // every row has a zero entry
    bool every_variable_appears = true; // no row is identically zero
    std::vector<std::size_t> offending_rows;

    bool ok() const noexcept { return no_common_factor && every_variable_appears; }
};

inline CanonicalReport check_canonical(const MonomialSet& set) {
    CanonicalReport rep;
    const std::size_t n = set.variable_count();
    for (std::size_t i = 0; i < n; ++i) {
        bool has_zero = false, has_nonzero = false;
        for (const auto& v : set.vectors()) {
            if (v[i] == 0)
                has_zero = true;
            else
                has_nonzero = true;
        }
        if (!has_zero)
            rep.no_common_factor = false;
        if (!has_nonzero)
            rep.every_variable_appears = false;
        if (!has_zero || !has_nonzero)
            rep.offending_rows.push_back(i);
    }
    return rep;
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

/// Connectivity of the row/column incidence structure, zero rows discarded.
inline bool is_cohesive(const MonomialSet& set) {
    const std::size_t n = set.variable_count(), q = set.size();
    detail::DisjointSets ds(n + q);
    std::vector<bool> row_used(n, false);
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (set[j][i] != 0) {
                ds.unite(i, n + j);
                row_used[i] = true;
            }
    const std::size_t root = ds.find(n);
    for (std::size_t j = 1; j < q; ++j)
        if (ds.find(n + j) != root)
            return false;
    for (std::size_t i = 0; i < n; ++i)
        if (row_used[i] && ds.find(i) != root)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

inline std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline Integer parse_exponent(std::string_view tok, std::string_view context) {
    tok = trim(tok);
    if (!tok.empty() && tok.front() == '-')
        throw ParseError("negative exponent in '" + std::string(context) + "'");
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("malformed exponent in '" + std::string(context) + "'");
    return Integer(std::string(tok));
}

} // namespace detail

/// Parses monomials separated by newlines, ',', ';' or '/'. Factors are
/// `name` or `name^k` joined by '*'; "1" is the empty monomial. An optional
/// line `vars: a, b, c` fixes the variable order; otherwise variables are
/// numbered by first appearance. '#' starts a comment.
inline MonomialSet parse_monomials(std::string_view text, std::vector<std::string> declared = {}) {
    std::vector<std::vector<std::pair<std::string, Integer>>> monomials;
    std::vector<std::string> seen_order;

    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        for (std::string_view prefix : {"vars:", "variables:"}) {
            if (line.substr(0, prefix.size()) == prefix) {
                if (!declared.empty())
                    throw ParseError("variables declared twice");
                for (auto name : detail::split(line.substr(prefix.size()), ", \t")) {
                    name = detail::trim(name);
                    if (name.empty())
                        continue;
                    if (!detail::is_identifier(name))
                        throw ParseError("malformed variable name '" + std::string(name) + "'");
                    declared.emplace_back(name);
                }
                line = {};
                break;
            }
        }
        if (line.empty())
            continue;
        for (auto item : detail::split(line, ",;/")) {
            item = detail::trim(item);
            if (item.empty())
                throw ParseError("empty monomial in line '" + raw + "'");
            std::vector<std::pair<std::string, Integer>> factors;
            if (item != "1") {
                for (auto factor : detail::split(item, "*")) {
                    factor = detail::trim(factor);
                    std::string_view name = factor;
                    Integer exp = 1;
                    if (auto caret = factor.find('^'); caret != std::string_view::npos) {
                        name = detail::trim(factor.substr(0, caret));
                        exp = detail::parse_exponent(factor.substr(caret + 1), item);
                    }
                    if (!detail::is_identifier(name))
                        throw ParseError("malformed token '" + std::string(factor) + "'");
                    if (std::find(seen_order.begin(), seen_order.end(), name) == seen_order.end())
                        seen_order.emplace_back(name);
                    factors.emplace_back(std::string(name), exp);
                }
            }
            monomials.push_back(std::move(factors));
        }
    }
    if (monomials.empty())
        throw ParseError("no monomials in input");

    std::vector<std::string> vars = declared.empty() ? seen_order : declared;
    if (!declared.empty()) {
        for (const auto& name : seen_order)
            if (std::find(vars.begin(), vars.end(), name) == vars.end())
                throw ParseError("undeclared variable '" + name + "'");
    }
    if (vars.size() < 2)
        throw ParseError("at least two variables are required");
    if (std::set<std::string>(vars.begin(), vars.end()).size() != vars.size())
        throw ParseError("duplicate variable declaration");

    std::vector<ExponentVector> vectors;
    std::set<ExponentVector> dedup;
    for (const auto& factors : monomials) {
        ExponentVector v(vars.size());
        for (const auto& [name, exp] : factors) {
            auto it = std::find(vars.begin(), vars.end(), name);
            v[static_cast<std::size_t>(it - vars.begin())] += exp;
        }
        if (!dedup.insert(v).second)
            throw ParseError("duplicate monomial");
        vectors.push_back(std::move(v));
    }
    return MonomialSet(std::move(vars), std::move(vectors));
}

/// Renders x^v, e.g. "x1^2*x2"; the zero vector renders as "1".
inline std::string render_monomial(const ExponentVector& v, const std::vector<std::string>& variables) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += variables.at(i);
        if (v[i] != 1)
            out += "^" + v[i].str();
    }
    return out.empty() ? "1" : out;
}

inline std::string render_monomials(const MonomialSet& set) {
    std::string out = "vars: ";
    for (std::size_t i = 0; i < set.variable_count(); ++i)
        out += (i ? ", " : "") + set.variables()[i];
    out += '\n';
    for (const auto& v : set.vectors())
        out += render_monomial(v, set.variables()) + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// JSON exchange format: {"variables": [...], "monomials": [[...], ...]}

using Json = nlohmann::ordered_json;

inline Json integer_to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

inline Json vector_to_json(const IntVector& v) {
    Json arr = Json::array();
    for (const auto& x : v)
        arr.push_back(integer_to_json(x));
    return arr;
}

inline Json matrix_to_json(const IntMatrix& m) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        arr.push_back(vector_to_json(m.row(i)));
    return arr;
}

inline Json to_json(const MonomialSet& set) {
    Json j;
    j["variables"] = set.variables();
    Json mons = Json::array();
    for (const auto& v : set.vectors())
        mons.push_back(vector_to_json(v));
    j["monomials"] = std::move(mons);
    return j;
}

inline MonomialSet monomials_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("monomials"))
            throw ParseError("JSON input needs a \"monomials\" array");
        std::vector<ExponentVector> vectors;
        for (const auto& col : j.at("monomials")) {
            if (!col.is_array())
                throw ParseError("each monomial must be an array of exponents");
            ExponentVector v;
            for (const auto& e : col) {
                if (e.is_number_integer())
                    v.emplace_back(e.get<std::int64_t>());
                else if (e.is_string())
                    v.emplace_back(detail::parse_exponent(e.get<std::string>(), e.get<std::string>()));
                else
                    throw ParseError("exponents must be integers");
                if (v.back() < 0)
                    throw ParseError("negative exponent");
            }
            vectors.push_back(std::move(v));
        }
        if (vectors.empty())
            throw ParseError("no monomials in input");
        std::vector<std::string> vars = j.contains("variables") ? j.at("variables").get<std::vector<std::string>>()
                                                                 : MonomialSet::default_names(vectors.front().size());
        std::set<ExponentVector> dedup;
        for (const auto& v : vectors) {
            if (v.size() != vars.size())
                throw ParseError("monomial length differs from the variable count");
            if (!dedup.insert(v).second)
                throw ParseError("duplicate monomial");
        }
        if (vars.size() < 2)
            throw ParseError("at least two variables are required");
        return MonomialSet(std::move(vars), std::move(vectors));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON monomial set: ") + e.what());
    } catch (const ContractError& e) {
        throw ParseError(e.what());
    }
}

inline MonomialSet parse_monomials_json(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return monomials_from_json(j);
}

// ---------------------------------------------------------------------------
// Equality up to independent row and column permutations

/// Rows sorted internally, then sorted among themselves. Invariant under row
/// and column permutations but not complete, so exact comparisons go through
/// find_permutation_match.
inline IntMatrix permutation_signature(const IntMatrix& m) {
    std::vector<IntVector> sig(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        sig[i] = m.row(i);
        std::sort(sig[i].begin(), sig[i].end());
    }
    std::sort(sig.begin(), sig.end());
    return IntMatrix::from_columns(sig, m.cols()).transpose();
}

struct PermutationMatch {
    std::vector<std::size_t> row_map; // a(i, j) == b(row_map[i], col_map[j])
    std::vector<std::size_t> col_map;
};

namespace detail {

inline bool column_prefixes_agree(const IntMatrix& a, const IntMatrix& b, const std::vector<std::size_t>& row_map,
                                  std::size_t depth) {
    std::vector<IntVector> pa(a.cols()), pb(b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < depth; ++i) {
            pa[j].push_back(a(i, j));
            pb[j].push_back(b(row_map[i], j));
        }
    }
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    return pa == pb;
}

inline bool match_rows(const IntMatrix& a, const IntMatrix& b, const std::vector<IntVector>& sig_a,
                       const std::vector<IntVector>& sig_b, std::vector<std::size_t>& row_map,
                       std::vector<bool>& used, std::size_t depth) {
    if (depth == a.rows())
        return true;
    for (std::size_t k = 0; k < b.rows(); ++k) {
        if (used[k] || sig_a[depth] != sig_b[k])
            continue;
        row_map[depth] = k;
        if (!column_prefixes_agree(a, b, row_map, depth + 1))
            continue;
        used[k] = true;
        if (match_rows(a, b, sig_a, sig_b, row_map, used, depth + 1))
            return true;
        used[k] = false;
    }
    return false;
}

} // namespace detail

/// Exact backtracking search for permutations carrying b onto a.
inline std::optional<PermutationMatch> find_permutation_match(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return std::nullopt;
    if (permutation_signature(a) != permutation_signature(b) ||
        permutation_signature(a.transpose()) != permutation_signature(b.transpose()))
        return std::nullopt;
    std::vector<IntVector> sig_a(a.rows()), sig_b(b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sig_a[i] = a.row(i);
        std::sort(sig_a[i].begin(), sig_a[i].end());
        sig_b[i] = b.row(i);
        std::sort(sig_b[i].begin(), sig_b[i].end());
    }
    PermutationMatch match{std::vector<std::size_t>(a.rows()), {}};
    std::vector<bool> used(b.rows(), false);
    if (!detail::match_rows(a, b, sig_a, sig_b, match.row_map, used, 0))
        return std::nullopt;
    // Pair columns with equal permuted contents.
    std::vector<bool> taken(b.cols(), false);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
            if (taken[l])
                continue;
            bool same = true;
            for (std::size_t i = 0; i < a.rows() && same; ++i)
                same = a(i, j) == b(match.row_map[i], l);
            if (same) {
                taken[l] = true;
                match.col_map.push_back(l);
                break;
            }
        }
    }
    if (match.col_map.size() != a.cols())
        throw InternalError("column pairing failed after a successful row match");
    return match;
}

inline bool equivalent_up_to_permutation(const IntMatrix& a, const IntMatrix& b) {
    return find_permutation_match(a, b).has_value();
}

inline bool equivalent_up_to_permutation(const MonomialSet& a, const MonomialSet& b) {
    return equivalent_up_to_permutation(log_matrix(a).entries, log_matrix(b).entries);
}

} // namespace mcremona
