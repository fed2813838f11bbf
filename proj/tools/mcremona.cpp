#include "mcremona/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

namespace {

std::string read_source(const std::string& path) {
    if (path.empty() || path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in)
        throw mcremona::ParseError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    using namespace mcremona::cli;

    CLI::App app{"Analyze monomial rational maps: birationality, Cremona inverses, degree-2 graphs, Hilbert bases"};
    app.require_subcommand(1, 1);

    AnalysisRequest req;
    req.workers = workers_from_env();
    std::string path;
    std::string inline_text;
    std::string format = "text";
    std::size_t bound = default_bound;

    const std::map<std::string, std::string> help{
        {"analyze", "Canonical restrictions, stochasticity, cohesiveness and birationality"},
        {"invert", "Cremona inverse, inversion factor and inverse degree"},
        {"classify", "Root structure and type of a degree-2 Cremona set"},
        {"normal-form", "Block normal form of a degree-2 log-matrix"},
        {"hilbert-check", "Bounded check that the lifted generators form a Hilbert base"},
        {"normal-check", "Bounded check that the monomials generate a normal ideal"},
        {"extract-cremona", "Subsets of n monomials forming a Cremona set"},
        {"export-dot", "Graph and edge graph of a degree-2 set in DOT"},
        {"generate", "Seeded random degree-2 Cremona set"}};
    for (const auto& name : commands()) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        if (name == "generate") {
            sub->add_option("--n", req.n, "Number of variables")->required();
            sub->add_option("--r", req.r, "Root circuit length (odd), 1 for a loop")->required();
            sub->add_option("--seed", req.seed, "Random seed");
            sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
            sub->add_flag("--json", req.json, "Emit JSON");
            continue;
        }
        sub->add_option("input", path, "Input file ('-' or omitted: stdin)");
        sub->add_option("-e,--expr", inline_text, "Inline monomial input instead of a file");
        sub->add_option("--format", format, "Input format")->check(CLI::IsMember({"text", "json"}));
        if (name == "hilbert-check" || name == "normal-check")
            sub->add_option("--bound", bound, "Bound on the last coordinate")->check(CLI::PositiveNumber);
        if (name == "export-dot")
            sub->add_flag("--json", req.json, "Wrap both DOT graphs in a JSON report");
    }

    CLI11_PARSE(app, argc, argv);

    req.command = app.get_subcommands().front()->get_name();
    req.format = format == "json" ? InputFormat::json : InputFormat::text;
    if (req.command == "hilbert-check" || req.command == "normal-check")
        req.bound = bound;
    try {
        if (req.command != "generate")
            req.input = inline_text.empty() ? read_source(path) : inline_text;
    } catch (const mcremona::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    }

    const AnalysisReport rep = run(req);
    std::cout << rep.output;
    if (!rep.error.empty())
        std::cerr << rep.error << '\n';
    return rep.exit_status;
}
