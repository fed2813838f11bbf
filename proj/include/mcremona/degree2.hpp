#pragma once

#include "mcremona/integer.hpp"
#include "mcremona/inversion.hpp"
#include "mcremona/matrix.hpp"
#include "mcremona/monomial.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mcremona {

/// Edge of the graph of a degree-2 set; u == v is a loop (a pure square).
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;

    bool loop() const noexcept { return u == v; }
    bool touches(std::size_t x) const noexcept { return u == x || v == x; }
    std::size_t other(std::size_t x) const noexcept { return u == x ? v : u; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Rooted structure of a Cremona graph: the unique odd circuit (or loop) and
/// the breadth-first layers hanging off it.
struct RootStructure {
    std::vector<std::size_t> circuit;       // c_1..c_r in cyclic order; one vertex for a loop
    std::vector<std::size_t> circuit_edges; // edge k joins c_k, c_{k+1}; the last closes the cycle
    std::vector<std::vector<std::size_t>> layers; // layers[0] = circuit vertices, then ascending index
    std::vector<std::optional<std::size_t>> parent_edge; // per vertex; empty on the circuit
    std::vector<std::size_t> layer_edge_counts; // s_j for j = 1..p
    std::size_t s = 0; // off-circuit vertices of degree >= 2

    std::size_t r() const noexcept { return circuit.size(); }
    std::size_t p() const noexcept { return layer_edge_counts.size(); }
    bool is_loop() const noexcept { return circuit.size() == 1; }
    bool on_circuit(std::size_t v) const noexcept { return !parent_edge[v].has_value(); }
    /// s_j with s_j = 0 past the last layer.
    std::size_t s_at(std::size_t j) const noexcept {
        return j >= 1 && j <= layer_edge_counts.size() ? layer_edge_counts[j - 1] : 0;
    }
};

class CremonaGraph {
public:
    CremonaGraph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
        incident_.resize(n_);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            if (edges_[e].u >= n_ || edges_[e].v >= n_)
                throw ContractError("edge endpoint out of range");
            incident_[edges_[e].u].push_back(e);
            if (!edges_[e].loop())
                incident_[edges_[e].v].push_back(e);
        }
        root_ = analyze();
    }

    std::size_t vertex_count() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

    /// Vertex degree with a loop counting twice.
    std::size_t degree(std::size_t v) const {
        std::size_t d = 0;
        for (std::size_t e : incident_[v])
            d += edges_[e].loop() ? 2 : 1;
        return d;
    }

    bool connected() const {
        if (n_ == 0)
            return true;
        std::vector<bool> seen(n_, false);
        std::deque<std::size_t> queue{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t e : incident_[x]) {
                const std::size_t y = edges_[e].other(x);
                if (!seen[y]) {
                    seen[y] = true;
                    ++count;
                    queue.push_back(y);
                }
            }
        }
        return count == n_;
    }

    /// Set iff the graph is connected, has n edges, and its unique cycle is odd
    /// or a single loop.
    const std::optional<RootStructure>& root() const noexcept { return root_; }

    const RootStructure& require_root() const {
        if (!root_)
            throw ContractError("graph is not a degree-2 Cremona graph");
        return *root_;
    }

private:
    std::optional<RootStructure> analyze() const {
        if (edges_.size() != n_ || !connected())
            return std::nullopt;
        std::size_t loops = 0;
        for (const auto& e : edges_)
            loops += e.loop() ? 1 : 0;
        if (loops > 1)
            return std::nullopt;

        // Strip degree-1 vertices until only the cycle (or loop vertex) remains.
        std::vector<std::size_t> deg(n_);
        std::vector<bool> removed(n_, false);
        std::deque<std::size_t> leaves;
        for (std::size_t v = 0; v < n_; ++v) {
            deg[v] = degree(v);
            if (deg[v] == 1)
                leaves.push_back(v);
        }
        while (!leaves.empty()) {
            const std::size_t v = leaves.front();
            leaves.pop_front();
            if (removed[v])
                continue;
            removed[v] = true;
            for (std::size_t e : incident_[v]) {
                const std::size_t w = edges_[e].other(v);
                if (removed[w])
                    continue;
                if (--deg[w] == 1)
                    leaves.push_back(w);
            }
        }
        std::vector<std::size_t> core;
        for (std::size_t v = 0; v < n_; ++v)
            if (!removed[v])
                core.push_back(v);

        RootStructure rs;
        if (loops == 1) {
            if (core.size() != 1)
                return std::nullopt;
            rs.circuit = core;
            for (std::size_t e = 0; e < edges_.size(); ++e)
                if (edges_[e].loop())
                    rs.circuit_edges.push_back(e);
        } else {
            if (core.size() < 3 || core.size() % 2 == 0)
                return std::nullopt;
            auto core_neighbors = [&](std::size_t v) {
                std::vector<std::pair<std::size_t, std::size_t>> out; // (vertex, edge)
                for (std::size_t e : incident_[v]) {
                    const std::size_t w = edges_[e].other(v);
                    if (!removed[w])
                        out.emplace_back(w, e);
                }
                std::sort(out.begin(), out.end());
                return out;
            };
            std::size_t prev = core.front();
            rs.circuit.push_back(prev);
            auto first = core_neighbors(prev);
            if (first.size() != 2)
                return std::nullopt;
            std::size_t cur = first[0].first;
            rs.circuit_edges.push_back(first[0].second);
            while (cur != core.front()) {
                rs.circuit.push_back(cur);
                auto nb = core_neighbors(cur);
                if (nb.size() != 2)
                    return std::nullopt;
                const auto& next = nb[0].first == prev ? nb[1] : nb[0];
                rs.circuit_edges.push_back(next.second);
                prev = cur;
                cur = next.first;
            }
            if (rs.circuit.size() != core.size())
                return std::nullopt;
        }

        rs.parent_edge.assign(n_, std::nullopt);
        std::vector<bool> placed(n_, false);
        rs.layers.push_back(rs.circuit);
        std::sort(rs.layers[0].begin(), rs.layers[0].end());
        for (std::size_t v : rs.circuit)
            placed[v] = true;
        while (true) {
            std::vector<std::size_t> next;
            for (std::size_t v : rs.layers.back())
                for (std::size_t e : incident_[v]) {
                    const std::size_t w = edges_[e].other(v);
                    if (!placed[w]) {
                        placed[w] = true;
                        rs.parent_edge[w] = e;
                        next.push_back(w);
                    }
                }
            if (next.empty())
                break;
            std::sort(next.begin(), next.end());
            rs.layer_edge_counts.push_back(next.size());
            rs.layers.push_back(std::move(next));
        }
        for (std::size_t v = 0; v < n_; ++v)
            if (rs.parent_edge[v] && degree(v) >= 2)
                ++rs.s;
        return rs;
    }

    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
    std::optional<RootStructure> root_;
};

/// One edge per monomial, a loop for each pure square.
inline CremonaGraph build_graph(const MonomialSet& set) {
    const LogMatrix lm = log_matrix(set);
    if (!lm.stochastic() || *lm.degree != 2)
        throw ContractError("the graph of a monomial set needs degree 2");
    std::vector<Edge> edges;
    for (const auto& v : set.vectors()) {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (Integer k = 0; k < v[i]; ++k)
                support.push_back(i);
        edges.push_back({support[0], support[1]});
    }
    return CremonaGraph(set.variable_count(), std::move(edges));
}

inline bool is_cremona_degree2(const CremonaGraph& graph) { return graph.root().has_value(); }

struct NormalForm {
    IntMatrix matrix;
    std::vector<std::size_t> row_permutation;    // matrix row k = original row row_permutation[k]
    std::vector<std::size_t> column_permutation; // matrix column k = original column column_permutation[k]
    std::size_t root_size = 0;                   // r, or 1 for the (2) block
    std::vector<std::size_t> block_sizes;        // s_1..s_p

    /// Offset of diagonal block b (0 = root block).
    std::size_t block_offset(std::size_t b) const {
        std::size_t off = b == 0 ? 0 : root_size;
        for (std::size_t k = 1; k < b; ++k)
            off += block_sizes[k - 1];
        return off;
    }
    std::size_t block_size(std::size_t b) const { return b == 0 ? root_size : block_sizes.at(b - 1); }
};

inline NormalForm normal_form(const CremonaGraph& graph, const IntMatrix& log) {
    const RootStructure& rs = graph.require_root();
    NormalForm nf;
    nf.root_size = rs.r();
    nf.block_sizes = rs.layer_edge_counts;
    nf.row_permutation = rs.circuit;
    nf.column_permutation = rs.circuit_edges;
    for (std::size_t j = 1; j < rs.layers.size(); ++j)
        for (std::size_t v : rs.layers[j]) {
            nf.row_permutation.push_back(v);
            nf.column_permutation.push_back(*rs.parent_edge[v]);
        }
    nf.matrix = log.permuted(nf.row_permutation, nf.column_permutation);

    const IntMatrix& m = nf.matrix;
    for (std::size_t b = 1; b <= nf.block_sizes.size(); ++b) {
        const std::size_t off = nf.block_offset(b), size = nf.block_size(b);
        const std::size_t prev_off = nf.block_offset(b - 1), prev_size = nf.block_size(b - 1);
        for (std::size_t c = off; c < off + size; ++c) {
            int ones_in_connector = 0;
            for (std::size_t row = 0; row < m.rows(); ++row) {
                const bool in_identity = row >= off && row < off + size;
                const bool in_connector = row >= prev_off && row < prev_off + prev_size;
                if (in_identity && m(row, c) != (row == c ? 1 : 0))
                    throw InternalError("normal form identity block is malformed");
                if (in_connector) {
                    if (m(row, c) != 0 && m(row, c) != 1)
                        throw InternalError("normal form connector block is not 0/1");
                    ones_in_connector += m(row, c) == 1 ? 1 : 0;
                } else if (!in_identity && m(row, c) != 0) {
                    throw InternalError("normal form has a nonzero entry outside its blocks");
                }
            }
            if (ones_in_connector != 1)
                throw InternalError("connector column must hold exactly one 1");
        }
    }
    return nf;
}

inline NormalForm normal_form(const MonomialSet& set) {
    return normal_form(build_graph(set), log_matrix(set).entries);
}

inline Integer inverse_degree(const CremonaGraph& graph) {
    const RootStructure& rs = graph.require_root();
    return Integer((rs.r() + 1) / 2 + rs.s);
}

/// Circuit vertex indicators plus the edges of the leaf-pruned graph that lie
/// off the circuit.
inline ExponentVector inversion_factor_degree2(const CremonaGraph& graph) {
    const RootStructure& rs = graph.require_root();
    ExponentVector gamma(graph.vertex_count());
    for (std::size_t v : rs.circuit)
        gamma[v] += 1;
    std::vector<bool> on_circuit_edge(graph.edges().size(), false);
    for (std::size_t e : rs.circuit_edges)
        on_circuit_edge[e] = true;
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        const Edge& edge = graph.edges()[e];
        if (on_circuit_edge[e] || graph.degree(edge.u) < 2 || graph.degree(edge.v) < 2)
            continue;
        gamma[edge.u] += 1;
        gamma[edge.v] += 1;
    }
    return gamma;
}

/// Inverse matrix reindexed so that position k pairs normal-form column k
/// (an edge) with normal-form row k (a vertex).
inline IntMatrix aligned_inverse(const NormalForm& nf, const InversionData& inv) {
    return inv.inverse_matrix.permuted(nf.column_permutation, nf.row_permutation);
}

struct EntryProfile {
    bool entries_in_0_1_2 = true;
    bool diagonal_nonzero = true;
    std::vector<std::size_t> rows_with_two;          // vertices whose aligned row holds a 2
    std::vector<std::size_t> expected_rows_with_two; // off-circuit vertices of degree >= 2
    bool squarefree_inverse = true;
    bool second_neighborhood_empty = true;

    bool holds() const {
        return entries_in_0_1_2 && diagonal_nonzero && rows_with_two == expected_rows_with_two &&
               squarefree_inverse == second_neighborhood_empty;
    }
};

inline EntryProfile inverse_entry_profile(const MonomialSet& set, const InversionData& inv) {
    const CremonaGraph graph = build_graph(set);
    const RootStructure& rs = graph.require_root();
    const NormalForm nf = normal_form(graph, log_matrix(set).entries);
    const IntMatrix aligned = aligned_inverse(nf, inv);
    EntryProfile prof;
    prof.second_neighborhood_empty = rs.p() <= 1;
    const std::size_t n = graph.vertex_count();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t vertex = nf.row_permutation[k];
        if (aligned(k, k) == 0)
            prof.diagonal_nonzero = false;
        bool has_two = false;
        for (std::size_t l = 0; l < n; ++l) {
            const Integer& x = aligned(k, l);
            if (x < 0 || x > 2)
                prof.entries_in_0_1_2 = false;
            if (x == 2)
                has_two = true;
            if (x >= 2)
                prof.squarefree_inverse = false;
        }
        if (has_two)
            prof.rows_with_two.push_back(vertex);
        if (!rs.on_circuit(vertex) && graph.degree(vertex) >= 2)
            prof.expected_rows_with_two.push_back(vertex);
    }
    std::sort(prof.rows_with_two.begin(), prof.rows_with_two.end());
    std::sort(prof.expected_rows_with_two.begin(), prof.expected_rows_with_two.end());
    return prof;
}

inline EntryProfile inverse_entry_profile(const MonomialSet& set) { return inverse_entry_profile(set, invert(set)); }

/// Simple undirected graph given by sorted adjacency lists.
struct SimpleGraph {
    std::vector<std::vector<std::size_t>> adjacency;

    std::size_t vertex_count() const noexcept { return adjacency.size(); }
};

/// Vertices are the edges of G; two are adjacent when the edges share an endpoint.
inline SimpleGraph edge_graph(const CremonaGraph& graph) {
    const auto& edges = graph.edges();
    SimpleGraph eg{std::vector<std::vector<std::size_t>>(edges.size())};
    for (std::size_t a = 0; a < edges.size(); ++a)
        for (std::size_t b = a + 1; b < edges.size(); ++b)
            if (edges[b].touches(edges[a].u) || edges[b].touches(edges[a].v)) {
                eg.adjacency[a].push_back(b);
                eg.adjacency[b].push_back(a);
            }
    for (auto& adj : eg.adjacency)
        std::sort(adj.begin(), adj.end());
    return eg;
}

inline std::size_t diameter(const SimpleGraph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t best = 0;
    constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
    for (std::size_t src = 0; src < n; ++src) {
        std::vector<std::size_t> dist(n, unseen);
        std::deque<std::size_t> queue{src};
        dist[src] = 0;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (std::size_t y : g.adjacency[x])
                if (dist[y] == unseen) {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
        }
        for (std::size_t d : dist) {
            if (d == unseen)
                throw ContractError("diameter of a disconnected graph");
            best = std::max(best, d);
        }
    }
    return best;
}

struct LinearTypeReport {
    bool structural = false;        // root-neighborhood condition
    bool diameter_at_most_two = false;
    std::size_t edge_graph_diameter = 0;

    bool agree() const noexcept { return structural == diameter_at_most_two; }
};

inline LinearTypeReport linear_type_report(const CremonaGraph& graph) {
    const RootStructure& rs = graph.require_root();
    LinearTypeReport rep;
    auto layers_empty_from = [&](std::size_t j0) {
        for (std::size_t j = j0; j <= rs.p(); ++j)
            if (rs.s_at(j) != 0)
                return false;
        return true;
    };
    switch (rs.r()) {
    case 1: rep.structural = layers_empty_from(3) && rs.s <= 1; break;
    case 3: rep.structural = layers_empty_from(2); break;
    case 5: rep.structural = layers_empty_from(1); break;
    default: rep.structural = false;
    }
    rep.edge_graph_diameter = diameter(edge_graph(graph));
    rep.diameter_at_most_two = rep.edge_graph_diameter <= 2;
    return rep;
}

/// Whether the inverse's base ideal is of linear type, via the structural test;
/// throws if the edge-graph diameter test disagrees.
inline bool is_inverse_linear_type(const CremonaGraph& graph) {
    const LinearTypeReport rep = linear_type_report(graph);
    if (!rep.agree())
        throw InternalError("structural and edge-graph diameter linear-type tests disagree");
    return rep.structural;
}

enum class Degree2Type { short_type, general_type };

inline const char* to_string(Degree2Type t) { return t == Degree2Type::short_type ? "short" : "general"; }

struct Degree2Classification {
    std::size_t r = 0;
    std::size_t s = 0;
    std::size_t p = 0;
    std::vector<std::size_t> layer_edge_counts;
    Integer inverse_degree;
    bool p_involution = false;
    Degree2Type type = Degree2Type::short_type;
    bool squarefree_input = true;
    bool apocryphal = false;
    bool doubly_stochastic = false;
    bool inverse_linear_type = false;
    bool squarefree_inverse = true;
};

inline bool is_squarefree(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) > 1)
                return false;
    return true;
}

/// p-involution via explicit permutation search between A_F and its inverse.
inline bool p_involution_by_search(const MonomialSet& set, const InversionData& inv) {
    return equivalent_up_to_permutation(log_matrix(set).entries, inv.inverse_matrix);
}

/// Structural p-involution test: a triangle with empty second neighborhood, or
/// a loop with exactly one off-circuit vertex of degree >= 2.
inline bool p_involution_structural(const RootStructure& rs) {
    return (rs.r() == 3 && rs.p() <= 1) || (rs.r() == 1 && rs.s == 1);
}

inline Degree2Classification classify(const MonomialSet& set) {
    const CremonaGraph graph = build_graph(set);
    const RootStructure& rs = graph.require_root();
    const InversionData inv = invert(set);

    Degree2Classification c;
    c.r = rs.r();
    c.s = rs.s;
    c.p = rs.p();
    c.layer_edge_counts = rs.layer_edge_counts;
    c.inverse_degree = inverse_degree(graph);
    if (c.inverse_degree != inv.delta)
        throw InternalError("predicted inverse degree differs from the computed inverse");
    if (inversion_factor_degree2(graph) != inv.gamma)
        throw InternalError("predicted inversion factor differs from the computed inverse");
    c.p_involution = p_involution_structural(rs);
    if (c.p_involution != (inv.delta == 2) || c.p_involution != p_involution_by_search(set, inv))
        throw InternalError("p-involution tests disagree");
    c.type = rs.p() <= 1 ? Degree2Type::short_type : Degree2Type::general_type;
    const IntMatrix a = log_matrix(set).entries;
    c.squarefree_input = is_squarefree(a);
    c.squarefree_inverse = is_squarefree(inv.inverse_matrix);
    c.apocryphal = !c.squarefree_inverse;
    c.doubly_stochastic = c.squarefree_input;
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
        c.doubly_stochastic = c.doubly_stochastic && graph.degree(v) == 2;
    c.inverse_linear_type = is_inverse_linear_type(graph);
    return c;
}

// ---------------------------------------------------------------------------
// Seeded generator

namespace detail {

/// Uniform draw in [0, bound) from a raw 64-bit engine; avoids the
/// implementation-defined std distributions so output is portable.
inline std::size_t draw(std::mt19937_64& rng, std::size_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

} // namespace detail

/// Random degree-2 Cremona set on n variables whose root is an r-circuit
/// (r odd >= 3) or a loop (r = 1), with the remaining vertices attached as a
/// random tree. Variable labels and monomial order are shuffled.
inline MonomialSet random_cremona_degree2(std::size_t n, std::size_t r, std::uint64_t seed) {
    if (n < 2)
        throw ContractError("need at least two variables");
    if (r % 2 == 0 || r > n)
        throw ContractError("root circuit length must be odd and at most n");
    if (r == 1 && n < 3)
        throw ContractError("a loop root needs n >= 3 to meet the canonical restrictions");

    std::mt19937_64 rng(seed);
    for (int attempt = 0;; ++attempt) {
        std::vector<Edge> edges;
        if (r == 1) {
            edges.push_back({0, 0});
        } else {
            for (std::size_t k = 0; k < r; ++k)
                edges.push_back({k, (k + 1) % r});
        }
        for (std::size_t v = r; v < n; ++v) {
            // Half the time extend the newest vertex to get deeper trees.
            const std::size_t parent = (v > r && detail::draw(rng, 2) == 0) ? v - 1 : detail::draw(rng, v);
            edges.push_back({parent, v});
        }
        // A loop vertex shared by every monomial would be a common factor.
        if (r == 1 && std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.touches(0); })) {
            if (attempt > 1000)
                throw InternalError("generator failed to avoid a star around the loop");
            continue;
        }

        std::vector<std::size_t> label(n);
        std::iota(label.begin(), label.end(), 0);
        for (std::size_t i = n; i > 1; --i)
            std::swap(label[i - 1], label[detail::draw(rng, i)]);
        for (std::size_t i = edges.size(); i > 1; --i)
            std::swap(edges[i - 1], edges[detail::draw(rng, i)]);

        std::vector<ExponentVector> vectors;
        for (const auto& e : edges) {
            ExponentVector v(n);
            v[label[e.u]] += 1;
            v[label[e.v]] += 1;
            vectors.push_back(std::move(v));
        }
        return MonomialSet::with_default_names(std::move(vectors));
    }
}

} // namespace mcremona
