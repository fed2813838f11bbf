#pragma once

#include "mcremona/degree2.hpp"
#include "mcremona/hilbert.hpp"
#include "mcremona/inversion.hpp"
#include "mcremona/monomial.hpp"
#include "mcremona/report.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace mcremona::cli {

enum class InputFormat { text, json };

struct AnalysisRequest {
    std::string command;
    std::string input; // raw monomial text or JSON; unused by `generate`
    InputFormat format = InputFormat::text;
    std::optional<std::size_t> bound; // hilbert-check / normal-check only
    std::uint64_t seed = 0;
    std::size_t n = 5;  // generate
    std::size_t r = 3;  // generate
    bool json = false;  // JSON output for export-dot and generate
    std::size_t workers = 1;
};

struct AnalysisReport {
    int exit_status = 0;
    std::string output; // stdout payload
    std::string error;  // stderr message
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"analyze",      "invert",          "classify",   "normal-form",
                                                "hilbert-check", "normal-check",   "extract-cremona",
                                                "export-dot",   "generate"};
    return names;
}

inline constexpr std::size_t default_bound = 3;

/// Worker count from MCREMONA_WORKERS, defaulting to 1.
inline std::size_t workers_from_env() {
    if (const char* w = std::getenv("MCREMONA_WORKERS")) {
        try {
            const long v = std::stol(w);
            if (v >= 1)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

namespace detail {

inline Json envelope(const AnalysisRequest& req, const MonomialSet& set) {
    Json j;
    j["command"] = req.command;
    j["input"] = to_json(set);
    return j;
}

inline void merge(Json& into, const Json& payload) {
    for (const auto& [k, v] : payload.items())
        into[k] = v;
}

inline std::string finish(Json j, std::vector<std::string> warnings) {
    j["warnings"] = std::move(warnings);
    return j.dump(2) + "\n";
}

inline std::string bound_warning(const BoundedReport& rep) {
    if (!rep.complete_up_to_bound)
        return "search budget exhausted; verdict covers last coordinate <= " + std::to_string(rep.bound) + " only";
    return "verdict is complete only for lattice points with last coordinate <= " + std::to_string(rep.bound);
}

inline std::string dispatch(const AnalysisRequest& req) {
    if (req.command == "generate") {
        const MonomialSet set = random_cremona_degree2(req.n, req.r, req.seed);
        if (req.json || req.format == InputFormat::json)
            return to_json(set).dump(2) + "\n";
        return render_monomials(set);
    }

    const MonomialSet set =
        req.format == InputFormat::json ? parse_monomials_json(req.input) : parse_monomials(req.input);
    const auto& vars = set.variables();
    Json j = envelope(req, set);
    std::vector<std::string> warnings;
    const CheckOptions opt{req.workers};

    if (req.command == "analyze") {
        const LogMatrix lm = log_matrix(set);
        const CanonicalReport canon = check_canonical(set);
        j["canonical"] = to_json(canon, vars);
        j["log_matrix"] = matrix_to_json(lm.entries);
        j["stochastic"] = lm.stochastic();
        j["degree"] = lm.degree ? integer_to_json(*lm.degree) : Json(nullptr);
        j["cohesive"] = is_cohesive(set);
        if (canon.ok() && lm.stochastic()) {
            j["birationality"] = to_json(is_cremona(set));
        } else {
            j["birationality"] = nullptr;
            warnings.push_back("birationality skipped: input must be stochastic and meet the canonical restrictions");
        }
    } else if (req.command == "invert") {
        const InversionData inv = invert(set);
        merge(j, to_json(inv, vars));
        j["verified"] = verify_inversion(set, inv);
    } else if (req.command == "classify") {
        merge(j, to_json(classify(set)));
    } else if (req.command == "normal-form") {
        merge(j, to_json(normal_form(set), set));
    } else if (req.command == "hilbert-check") {
        const HilbertReport rep = is_hilbert_base(lift(set), req.bound.value_or(default_bound), opt);
        merge(j, to_json(rep));
        warnings.push_back(bound_warning(rep));
    } else if (req.command == "normal-check") {
        const NormalityReport rep = is_normal_ideal(set, req.bound.value_or(default_bound), opt);
        merge(j, to_json(rep));
        warnings.push_back(bound_warning(rep));
    } else if (req.command == "extract-cremona") {
        const CremonaSubsetReport rep = find_cremona_subsets(set);
        merge(j, to_json(rep, set));
        if (rep.cremona_subsets.empty()) {
            j["first"] = nullptr;
            warnings.push_back("no Cremona subset: the ideal is not normal or the lattice is rank deficient");
        } else {
            std::vector<ExponentVector> first;
            for (std::size_t c : rep.cremona_subsets.front())
                first.push_back(set[c]);
            j["first"] = monomial_strings(first, vars);
        }
    } else if (req.command == "export-dot") {
        const CremonaGraph g = build_graph(set);
        const std::string graph = graph_to_dot(g, vars);
        const std::string egraph = edge_graph_to_dot(g, set);
        if (!req.json)
            return graph + egraph;
        j["graph"] = graph;
        j["edge_graph"] = egraph;
    } else {
        throw ContractError("unknown command '" + req.command + "'");
    }
    return finish(std::move(j), std::move(warnings));
}

} // namespace detail

/// Runs one command. Exit status: 0 success, 1 parse error, 2 contract
/// violation, 3 internal invariant failure.
inline AnalysisReport run(const AnalysisRequest& req) {
    AnalysisReport rep;
    try {
        rep.output = detail::dispatch(req);
    } catch (const ParseError& e) {
        rep.exit_status = 1;
        rep.error = std::string("parse error: ") + e.what();
    } catch (const ContractError& e) {
        rep.exit_status = 2;
        rep.error = std::string("contract violation: ") + e.what();
    } catch (const InternalError& e) {
        rep.exit_status = 3;
        rep.error = std::string("internal error: ") + e.what();
    }
    return rep;
}

} // namespace mcremona::cli
