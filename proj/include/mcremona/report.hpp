#pragma once

// JSON and DOT renderings of the engine results. Key order is fixed.

#include "mcremona/degree2.hpp"
#include "mcremona/hilbert.hpp"
#include "mcremona/inversion.hpp"
#include "mcremona/monomial.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace mcremona {

inline Json names_json(const std::vector<std::size_t>& idx, const std::vector<std::string>& names) {
    Json arr = Json::array();
    for (std::size_t i : idx)
        arr.push_back(names.at(i));
    return arr;
}

inline Json monomial_strings(const std::vector<ExponentVector>& vs, const std::vector<std::string>& variables) {
    Json arr = Json::array();
    for (const auto& v : vs)
        arr.push_back(render_monomial(v, variables));
    return arr;
}

inline Json to_json(const CanonicalReport& rep, const std::vector<std::string>& variables) {
    Json j;
    j["no_common_factor"] = rep.no_common_factor;
    j["every_variable_appears"] = rep.every_variable_appears;
    j["offending_rows"] = names_json(rep.offending_rows, variables);
    return j;
}

inline Json to_json(const BirationalityReport& rep) {
    Json j;
    j["d"] = integer_to_json(rep.d);
    j["minor_gcd"] = integer_to_json(rep.minor_gcd);
    j["determinant"] = rep.determinant ? integer_to_json(*rep.determinant) : Json(nullptr);
    j["is_birational_onto_image"] = rep.is_birational_onto_image;
    j["is_cremona"] = rep.is_cremona;
    return j;
}

inline Json to_json(const InversionData& inv, const std::vector<std::string>& variables) {
    Json j;
    Json cols = Json::array();
    for (const auto& c : inv.inverse_matrix.columns())
        cols.push_back(vector_to_json(c));
    j["inverse"] = std::move(cols);
    j["inverse_monomials"] = monomial_strings(inv.inverse_matrix.columns(), variables);
    j["gamma"] = vector_to_json(inv.gamma);
    j["delta"] = integer_to_json(inv.delta);
    j["factor"] = inversion_factor(inv, variables);
    return j;
}

inline Json to_json(const Degree2Classification& c) {
    Json j;
    j["type"] = to_string(c.type);
    j["p_involution"] = c.p_involution;
    j["inverse_degree"] = integer_to_json(c.inverse_degree);
    j["r"] = c.r;
    j["s"] = c.s;
    j["p"] = c.p;
    j["layer_edge_counts"] = c.layer_edge_counts;
    j["squarefree_input"] = c.squarefree_input;
    j["apocryphal"] = c.apocryphal;
    j["doubly_stochastic"] = c.doubly_stochastic;
    j["inverse_linear_type"] = c.inverse_linear_type;
    j["squarefree_inverse"] = c.squarefree_inverse;
    return j;
}

inline Json to_json(const NormalForm& nf, const MonomialSet& set) {
    Json j;
    j["matrix"] = matrix_to_json(nf.matrix);
    j["row_permutation"] = names_json(nf.row_permutation, set.variables());
    std::vector<ExponentVector> cols;
    for (std::size_t c : nf.column_permutation)
        cols.push_back(set[c]);
    j["column_permutation"] = nf.column_permutation;
    j["column_monomials"] = monomial_strings(cols, set.variables());
    j["root_size"] = nf.root_size;
    j["block_sizes"] = nf.block_sizes;
    return j;
}

inline Json to_json(const BoundedReport& rep) {
    Json j;
    j["verdict"] = to_string(rep.verdict);
    j["bound"] = rep.bound;
    j["complete_up_to_bound"] = rep.complete_up_to_bound;
    j["counterexample"] = rep.counterexample ? vector_to_json(*rep.counterexample) : Json(nullptr);
    j["points_checked"] = rep.points_checked;
    return j;
}

inline Json to_json(const CremonaSubsetReport& rep, const MonomialSet& set) {
    auto subsets = [&](const std::vector<std::vector<std::size_t>>& list) {
        Json arr = Json::array();
        for (const auto& idx : list) {
            std::vector<ExponentVector> vs;
            for (std::size_t c : idx)
                vs.push_back(set[c]);
            arr.push_back(monomial_strings(vs, set.variables()));
        }
        return arr;
    };
    Json j;
    j["d"] = integer_to_json(rep.d);
    j["determinant_d_subsets"] = subsets(rep.determinant_d_subsets);
    j["cremona_subsets"] = subsets(rep.cremona_subsets);
    j["classes"] = subsets(rep.classes);
    return j;
}

// ---------------------------------------------------------------------------
// DOT

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

/// G_F with one node per variable and one edge per monomial, loops as self-edges.
inline std::string graph_to_dot(const CremonaGraph& g, const std::vector<std::string>& variables) {
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (const auto& e : g.edges())
        es.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    std::sort(es.begin(), es.end());
    std::ostringstream os;
    os << "graph G_F {\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        os << "  " << dot_quote(variables[v]) << ";\n";
    for (const auto& [a, b] : es)
        os << "  " << dot_quote(variables[a]) << " -- " << dot_quote(variables[b]) << ";\n";
    os << "}\n";
    return os.str();
}

/// Edge graph, nodes labelled by their monomials.
inline std::string edge_graph_to_dot(const CremonaGraph& g, const MonomialSet& set) {
    const SimpleGraph eg = edge_graph(g);
    std::vector<std::string> label;
    for (const auto& v : set.vectors())
        label.push_back(render_monomial(v, set.variables()));
    std::vector<std::pair<std::string, std::string>> es;
    for (std::size_t a = 0; a < eg.vertex_count(); ++a)
        for (std::size_t b : eg.adjacency[a])
            if (a < b)
                es.emplace_back(std::min(label[a], label[b]), std::max(label[a], label[b]));
    std::sort(es.begin(), es.end());
    std::vector<std::string> nodes = label;
    std::sort(nodes.begin(), nodes.end());
    std::ostringstream os;
    os << "graph edge_graph {\n";
    for (const auto& n : nodes)
        os << "  " << dot_quote(n) << ";\n";
    for (const auto& [a, b] : es)
        os << "  " << dot_quote(a) << " -- " << dot_quote(b) << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace mcremona
